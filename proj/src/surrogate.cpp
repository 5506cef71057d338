#include "ckaf/surrogate.hpp"

#include "ckaf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ckaf::surrogate {

std::vector<double> polynomial_features(std::span<const double> x, int degree) {
    const std::size_t n = x.size();
    std::vector<double> phi;
    phi.push_back(1.0);
    if (degree == 1) {
        phi.insert(phi.end(), x.begin(), x.end());
        return phi;
    }
    if (degree != 2) throw std::invalid_argument("polynomial_features: degree must be 1 or 2");
    const double r2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) phi.push_back(r2 * x[i]);
    for (std::size_t i = 0; i < n; ++i) phi.push_back(x[i] * x[i]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) phi.push_back(r2 * x[i] * x[j]);
    }
    return phi;
}

CVec complexified_features(CSpan z, int degree) {
    const auto phi = polynomial_features(embed(z), degree);
    CVec out(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) out[j] = {phi[j], phi[j]};
    return out;
}

double instantaneous_cost(CSpan phi, CSpan w, cplx d) {
    return std::norm(d - wirtinger::inner(phi, w));
}

wirtinger::WirtingerPair instantaneous_cost_gradient(CSpan phi, CSpan w, cplx d) {
    const cplx e = d - wirtinger::inner(phi, w);
    wirtinger::WirtingerPair out{CVec(phi.size()), CVec(phi.size())};
    for (std::size_t j = 0; j < phi.size(); ++j) {
        out.d_zstar[j] = -std::conj(e) * phi[j];
        out.d_z[j] = std::conj(out.d_zstar[j]);
    }
    return out;
}

SurrogateReport gradient_check(std::uint64_t seed, int trials, double tol, bool inject_sign_error) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> dim(1, 2);
    auto scalar = [&] { return cplx{u(rng), u(rng)}; };

    SurrogateReport report;
    for (int t = 0; t < trials; ++t) {
        CVec z(dim(rng));
        for (auto& v : z) v = scalar();
        const CVec phi = complexified_features(z, 2);
        CVec w0(phi.size());
        for (auto& v : w0) v = 0.5 * scalar();
        const cplx d = scalar();

        const wirtinger::ScalarField cost = [&](CSpan w) { return cplx{instantaneous_cost(phi, w, d), 0.0}; };
        const wirtinger::AnalyticGradient grad = [&](CSpan w) {
            auto g = instantaneous_cost_gradient(phi, w, d);
            if (inject_sign_error) {
                for (auto& v : g.d_z) v = -v;
                for (auto& v : g.d_zstar) v = -v;
            }
            return g;
        };
        const auto r = wirtinger::check_gradient(cost, grad, w0, tol);
        ++report.trials;
        report.worst_error = std::max(report.worst_error, r.best_error);
        if (!r.passed) {
            if (report.failures == 0) {
                std::ostringstream os;
                os.precision(17);
                os << "nu=" << z.size() << " z0=" << z[0] << " d=" << d << " error=" << r.best_error;
                report.witness = os.str();
            }
            ++report.failures;
        }
    }
    return report;
}

} // namespace ckaf::surrogate
