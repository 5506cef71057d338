#include "ckaf/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ckaf {

namespace {

void require_same_length(CSpan a, CSpan b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("kernel arguments differ in length: " +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    }
}

} // namespace

std::vector<double> embed(CSpan z) {
    const std::size_t nu = z.size();
    std::vector<double> out(2 * nu);
    for (std::size_t j = 0; j < nu; ++j) {
        out[j] = z[j].real();
        out[nu + j] = z[j].imag();
    }
    return out;
}

CVec unembed(std::span<const double> v) {
    if (v.size() % 2 != 0) {
        throw std::invalid_argument("unembed: odd-length real vector");
    }
    const std::size_t nu = v.size() / 2;
    CVec z(nu);
    for (std::size_t j = 0; j < nu; ++j) z[j] = {v[j], v[nu + j]};
    return z;
}

RealKernel RealKernel::gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian kernel requires finite sigma > 0");
    }
    return RealKernel(KernelKind::gaussian, sigma, 0);
}

RealKernel RealKernel::polynomial(int degree) {
    if (degree < 1) {
        throw std::invalid_argument("polynomial kernel requires degree >= 1");
    }
    return RealKernel(KernelKind::polynomial, 0.0, degree);
}

double RealKernel::eval(CSpan a, CSpan b) const {
    require_same_length(a, b);
    if (kind_ == KernelKind::gaussian) {
        // ||u - v||^2 over the embedded coordinates, same summation order as embed().
        double dist2 = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double dx = a[j].real() - b[j].real();
            dist2 += dx * dx;
        }
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double dy = a[j].imag() - b[j].imag();
            dist2 += dy * dy;
        }
        return std::exp(-dist2 / (sigma_ * sigma_));
    }
    double dot = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) dot += a[j].real() * b[j].real();
    for (std::size_t j = 0; j < a.size(); ++j) dot += a[j].imag() * b[j].imag();
    const double base = 1.0 + dot;
    double out = 1.0;
    for (int p = 0; p < degree_; ++p) out *= base;
    return out;
}

cplx complexified_inner(const RealKernel& k, CSpan a, CSpan b) {
    return {2.0 * k.eval(a, b), 0.0};
}

double feature_distance_sq(double k_aa, double k_ab, double k_bb) noexcept {
    const double d = 2.0 * (k_aa - 2.0 * k_ab + k_bb);
    return d > 0.0 ? d : 0.0;
}

double feature_distance_sq(const RealKernel& k, CSpan a, CSpan b) {
    return feature_distance_sq(k.eval(a, a), k.eval(a, b), k.eval(b, b));
}

} // namespace ckaf
