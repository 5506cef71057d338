#pragma once

#include "ckaf/types.hpp"
#include "ckaf/wirtinger.hpp"

#include <cstdint>
#include <span>
#include <vector>

// Finite-dimensional stand-in for the complexified polynomial RKHS: the
// explicit monomial feature map phi with phi(x).phi(y) = (1 + x^T y)^d, and
// Phi(z) = phi(z) + i phi(z) over the embedded input.
namespace ckaf::surrogate {

/// Explicit feature map of the polynomial kernel, degree 1 or 2.
std::vector<double> polynomial_features(std::span<const double> x, int degree);

/// Phi(z) = (1 + i) phi(embed(z)).
CVec complexified_features(CSpan z, int degree);

/// L(w) = |d - <Phi, w>|^2 with <a, b> = sum a_j conj(b_j).
double instantaneous_cost(CSpan phi, CSpan w, cplx d);

/// Closed form: d/dw* = -conj(e) Phi, d/dw = conj of that (the cost is real).
wirtinger::WirtingerPair instantaneous_cost_gradient(CSpan phi, CSpan w, cplx d);

struct SurrogateReport {
    int trials = 0;
    int failures = 0;
    double worst_error = 0.0;
    std::string witness;

    bool passed() const { return trials > 0 && failures == 0; }
};

/// Runs check_gradient on the instantaneous cost at `trials` random
/// (w, z, d) with the degree-2 feature map.
SurrogateReport gradient_check(std::uint64_t seed, int trials = 50, double tol = 1e-5,
                               bool inject_sign_error = false);

} // namespace ckaf::surrogate
