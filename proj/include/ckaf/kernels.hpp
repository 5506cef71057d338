#pragma once

#include "ckaf/types.hpp"

#include <vector>

namespace ckaf {

/// Maps z = x + iy in C^nu to (x_1..x_nu, y_1..y_nu) in R^{2nu}.
/// Block layout (all real parts, then all imaginary parts).
std::vector<double> embed(CSpan z);

/// Inverse of embed. The input length must be even.
CVec unembed(std::span<const double> v);

enum class KernelKind { gaussian, polynomial };

/// Real positive-definite kernel on R^{2nu}, evaluated on complex vectors
/// through the embedding.
///
///   gaussian:   exp(-||u - v||^2 / sigma^2)
///   polynomial: (1 + u^T v)^degree
class RealKernel {
public:
    static RealKernel gaussian(double sigma);
    static RealKernel polynomial(int degree);

    KernelKind kind() const noexcept { return kind_; }
    double sigma() const noexcept { return sigma_; }
    int degree() const noexcept { return degree_; }

    /// Throws std::invalid_argument when a and b differ in length.
    double eval(CSpan a, CSpan b) const;

    double operator()(CSpan a, CSpan b) const { return eval(a, b); }

private:
    RealKernel(KernelKind kind, double sigma, int degree)
        : kind_(kind), sigma_(sigma), degree_(degree) {}

    KernelKind kind_;
    double sigma_;
    int degree_;
};

/// <Phi(a), Phi(b)> in the complexified space, with Phi(z) = kappa(z,.) + i kappa(z,.).
/// Always 2 kappa(a, b) + 0i.
cplx complexified_inner(const RealKernel& k, CSpan a, CSpan b);

/// ||Phi(a) - Phi(b)||^2 in the complexified space: 2(k_aa - 2 k_ab + k_bb).
double feature_distance_sq(const RealKernel& k, CSpan a, CSpan b);

/// Same as feature_distance_sq when k(a, b) is already known.
double feature_distance_sq(double k_aa, double k_ab, double k_bb) noexcept;

} // namespace ckaf
