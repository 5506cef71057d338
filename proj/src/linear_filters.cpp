#include "ckaf/linear_filters.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ckaf {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

} // namespace

LinearCFilter::LinearCFilter(std::size_t taps, double mu, double eps, bool widely)
    : h_(taps, cplx{}), mu_(mu), eps_(eps) {
    if (taps == 0) throw std::invalid_argument("linear filter needs at least one tap");
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be finite and >= 0");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be finite and >= 0");
    if (widely) g_.emplace(taps, cplx{});
}

LinearCFilter LinearCFilter::strictly_linear(std::size_t taps, double mu, double eps) {
    return LinearCFilter(taps, mu, eps, false);
}

LinearCFilter LinearCFilter::widely_linear(std::size_t taps, double mu, double eps) {
    return LinearCFilter(taps, mu, eps, true);
}

void LinearCFilter::set_weights(CSpan h, CSpan g) {
    if (h.size() != h_.size()) throw std::invalid_argument("set_weights: h length mismatch");
    if (g_ && g.size() != g_->size()) throw std::invalid_argument("set_weights: g length mismatch");
    if (!g_ && !g.empty()) throw std::invalid_argument("set_weights: strictly linear filter has no g");
    h_.assign(h.begin(), h.end());
    if (g_) g_->assign(g.begin(), g.end());
}

cplx LinearCFilter::predict(CSpan x) const {
    if (x.size() != h_.size()) {
        throw std::invalid_argument("linear filter expects " + std::to_string(h_.size()) +
                                    " inputs, got " + std::to_string(x.size()));
    }
    cplx y{};
    for (std::size_t j = 0; j < x.size(); ++j) y += std::conj(h_[j]) * x[j];
    if (g_) {
        const CVec& g = *g_;
        for (std::size_t j = 0; j < x.size(); ++j) y += std::conj(g[j]) * std::conj(x[j]);
    }
    return y;
}

LinearStep LinearCFilter::update(CSpan x, cplx d) {
    if (!finite(d)) throw std::domain_error("linear filter: non-finite desired sample");
    double power = 0.0;
    for (const auto& v : x) {
        if (!finite(v)) throw std::domain_error("linear filter: non-finite input sample");
        power += std::norm(v);
    }
    const cplx y = predict(x);
    const cplx e = d - y;
    // ||x*||^2 == ||x||^2, so the augmented power is twice the input power.
    const double denom = (g_ ? 2.0 * power : power) + eps_;
    if (denom > 0.0) {
        const cplx step = (mu_ / denom) * std::conj(e);
        for (std::size_t j = 0; j < x.size(); ++j) h_[j] += step * x[j];
        if (g_) {
            CVec& g = *g_;
            for (std::size_t j = 0; j < x.size(); ++j) g[j] += step * std::conj(x[j]);
        }
    }
    return {y, e};
}

} // namespace ckaf
