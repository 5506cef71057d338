#pragma once

#include "ckaf/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ckaf::wirtinger {

/// Scalar map T: C^m -> C. Must be deterministic.
using ScalarField = std::function<cplx(CSpan)>;

/// R-derivative (d_z) and conjugate R-derivative (d_zstar), one entry per coordinate.
struct WirtingerPair {
    CVec d_z;
    CVec d_zstar;
};

using AnalyticGradient = std::function<WirtingerPair(CSpan)>;

/// Finite-dimensional complexified inner product <a, b> = sum_j a_j conj(b_j).
/// Linear in the first argument, conjugate-linear in the second.
cplx inner(CSpan a, CSpan b);

/// Central-difference Wirtinger derivatives of f at w with step h.
///
/// For each coordinate j the partials of u = Re T and v = Im T with respect to
/// x_j = Re w_j and y_j = Im w_j are combined as
///   d_z     = (u_x + v_y)/2 + i (v_x - u_y)/2
///   d_zstar = (u_x - v_y)/2 + i (v_x + u_y)/2
///
/// Throws std::invalid_argument for h <= 0 and std::domain_error when f is
/// non-finite at a probe point (the message names the coordinate).
WirtingerPair numeric_wirtinger(const ScalarField& f, CSpan w, double h);

/// Max-norm error of each half against its reference, scaled by
/// max(1, ||ref half||_inf); the larger of the two halves.
double relative_error(const WirtingerPair& num, const WirtingerPair& ref);

struct GradientReport {
    bool passed = false;
    double best_error = 0.0;
    double best_step = 0.0;
    /// Per coordinate, max of |d_z error| and |d_zstar error| at the best step.
    std::vector<double> coordinate_errors;
    WirtingerPair numeric;
    WirtingerPair analytic;
};

inline constexpr double kStepLadder[] = {1e-4, 1e-5, 1e-6};

/// Compares numeric_wirtinger over kStepLadder against analytic(w). Passes if
/// the smallest relative error over the ladder is below tol.
GradientReport check_gradient(const ScalarField& f, const AnalyticGradient& analytic, CSpan w,
                              double tol);

struct PropertyResult {
    int property = 0;
    std::string name;
    bool passed = true;
    int trials = 0;
    double max_error = 0.0;
    std::string witness; // first failing point, empty when passed
};

struct SuiteReport {
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<PropertyResult> results;

    bool all_passed() const;
};

struct SuiteOptions {
    int trials = 100;
    int max_dimension = 4;
    double tolerance = 1e-6;
    /// Test hook: flips the sign of every analytic reference used by the suite.
    bool inject_sign_error = false;
};

/// Randomized numerical check of the eleven calculus rules (holomorphic and
/// anti-holomorphic vanishing, conjugation rules, real-valued symmetry,
/// first-order Taylor expansion, the four inner-product forms, product rule).
SuiteReport property_suite(std::uint64_t seed, const SuiteOptions& options = {});

} // namespace ckaf::wirtinger
