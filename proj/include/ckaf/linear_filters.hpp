#pragma once

#include "ckaf/types.hpp"

#include <optional>

namespace ckaf {

struct LinearStep {
    cplx prediction;
    cplx error;
};

/// Normalized complex LMS (strictly linear, y = h^H x) and its widely-linear
/// variant (y = h^H x + g^H x*).
///
/// Update with e = d - y:
///   strictly linear: h += mu / (||x||^2 + eps) * conj(e) * x
///   widely linear:   h += s * conj(e) * x,  g += s * conj(e) * conj(x),
///                    s = mu / (||x||^2 + ||x*||^2 + eps)
class LinearCFilter {
public:
    static constexpr double kDefaultEps = 1e-8;

    static LinearCFilter strictly_linear(std::size_t taps, double mu, double eps = kDefaultEps);
    static LinearCFilter widely_linear(std::size_t taps, double mu, double eps = kDefaultEps);

    bool is_widely_linear() const noexcept { return g_.has_value(); }
    std::size_t taps() const noexcept { return h_.size(); }
    double mu() const noexcept { return mu_; }
    double eps() const noexcept { return eps_; }

    CSpan h() const noexcept { return h_; }
    /// Empty for the strictly linear filter.
    CSpan g() const noexcept { return g_ ? CSpan(*g_) : CSpan(); }

    /// Overwrites the weights (used to seed tests and symmetric starts).
    void set_weights(CSpan h, CSpan g = {});

    cplx predict(CSpan x) const;

    /// Returns the pre-update prediction and error. Non-finite x or d throws
    /// std::domain_error and leaves the weights untouched.
    LinearStep update(CSpan x, cplx d);

private:
    LinearCFilter(std::size_t taps, double mu, double eps, bool widely);

    CVec h_;
    std::optional<CVec> g_;
    double mu_;
    double eps_;
};

} // namespace ckaf
