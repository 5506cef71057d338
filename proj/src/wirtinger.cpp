#include "ckaf/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ckaf::wirtinger {

cplx inner(CSpan a, CSpan b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
    return acc;
}

namespace {

cplx eval_checked(const ScalarField& f, const CVec& w, std::size_t j, const char* part,
                  double sign) {
    const cplx v = f(w);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "non-finite field value at coordinate " << j << " (" << part << " part, "
            << (sign > 0 ? "+h" : "-h") << " probe)";
        throw std::domain_error(msg.str());
    }
    return v;
}

double inf_norm(CSpan v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

double diff_inf_norm(CSpan a, CSpan b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace

WirtingerPair numeric_wirtinger(const ScalarField& f, CSpan w, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("numeric_wirtinger: step must be positive");
    const std::size_t m = w.size();
    WirtingerPair out{CVec(m), CVec(m)};
    CVec probe(w.begin(), w.end());
    const cplx i{0.0, 1.0};
    for (std::size_t j = 0; j < m; ++j) {
        const cplx orig = probe[j];

        probe[j] = orig + h;
        const cplx fxp = eval_checked(f, probe, j, "real", +1);
        probe[j] = orig - h;
        const cplx fxm = eval_checked(f, probe, j, "real", -1);
        probe[j] = orig + i * h;
        const cplx fyp = eval_checked(f, probe, j, "imaginary", +1);
        probe[j] = orig - i * h;
        const cplx fym = eval_checked(f, probe, j, "imaginary", -1);
        probe[j] = orig;

        // dT/dx = u_x + i v_x, dT/dy = u_y + i v_y
        const cplx t_x = (fxp - fxm) / (2.0 * h);
        const cplx t_y = (fyp - fym) / (2.0 * h);
        out.d_z[j] = 0.5 * (t_x - i * t_y);
        out.d_zstar[j] = 0.5 * (t_x + i * t_y);
    }
    return out;
}

double relative_error(const WirtingerPair& num, const WirtingerPair& ref) {
    if (num.d_z.size() != ref.d_z.size() || num.d_zstar.size() != ref.d_zstar.size()) {
        throw std::invalid_argument("relative_error: dimension mismatch");
    }
    const double err_z = diff_inf_norm(num.d_z, ref.d_z) / std::max(1.0, inf_norm(ref.d_z));
    const double err_zs = diff_inf_norm(num.d_zstar, ref.d_zstar) / std::max(1.0, inf_norm(ref.d_zstar));
    return std::max(err_z, err_zs);
}

GradientReport check_gradient(const ScalarField& f, const AnalyticGradient& analytic, CSpan w,
                              double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("check_gradient: tol must be positive");
    GradientReport report;
    report.analytic = analytic(w);
    report.best_error = std::numeric_limits<double>::infinity();
    for (double h : kStepLadder) {
        WirtingerPair num = numeric_wirtinger(f, w, h);
        const double err = relative_error(num, report.analytic);
        if (err < report.best_error) {
            report.best_error = err;
            report.best_step = h;
            report.numeric = std::move(num);
        }
    }
    const auto& ref = report.analytic;
    const double scale_z = std::max(1.0, inf_norm(ref.d_z));
    const double scale_zs = std::max(1.0, inf_norm(ref.d_zstar));
    report.coordinate_errors.resize(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        report.coordinate_errors[j] = std::max(std::abs(report.numeric.d_z[j] - ref.d_z[j]) / scale_z,
                                               std::abs(report.numeric.d_zstar[j] - ref.d_zstar[j]) / scale_zs);
    }
    report.passed = report.best_error < tol;
    return report;
}

bool SuiteReport::all_passed() const {
    return !results.empty() &&
           std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

namespace {

// c * z_i^p * conj(z_j)^q
struct Monomial {
    cplx c;
    std::size_t i;
    int p;
    std::size_t j;
    int q;
};

cplx ipow(cplx base, int e) {
    cplx out{1.0, 0.0};
    for (int k = 0; k < e; ++k) out *= base;
    return out;
}

/// Polynomial in (z, z*) with closed-form Wirtinger derivatives.
struct Polynomial {
    std::vector<Monomial> terms;

    cplx operator()(CSpan z) const {
        cplx acc{0.0, 0.0};
        for (const auto& t : terms) acc += t.c * ipow(z[t.i], t.p) * ipow(std::conj(z[t.j]), t.q);
        return acc;
    }

    WirtingerPair derivatives(CSpan z) const {
        WirtingerPair out{CVec(z.size()), CVec(z.size())};
        for (const auto& t : terms) {
            const cplx zs = std::conj(z[t.j]);
            if (t.p > 0) {
                out.d_z[t.i] += t.c * static_cast<double>(t.p) * ipow(z[t.i], t.p - 1) * ipow(zs, t.q);
            }
            if (t.q > 0) {
                out.d_zstar[t.j] +=
                    t.c * ipow(z[t.i], t.p) * static_cast<double>(t.q) * ipow(zs, t.q - 1);
            }
        }
        return out;
    }
};

enum class PolyKind { holomorphic, antiholomorphic, mixed };

class Sampler {
public:
    Sampler(std::uint64_t seed, int max_dim) : rng_(seed), max_dim_(max_dim) {}

    std::size_t dimension() {
        return std::uniform_int_distribution<std::size_t>(1, static_cast<std::size_t>(max_dim_))(rng_);
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    cplx scalar() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    CVec vector(std::size_t m) {
        CVec v(m);
        for (auto& x : v) x = scalar();
        return v;
    }

    CVec unit_vector(std::size_t m) {
        CVec v = vector(m);
        double n2 = 0.0;
        for (const auto& x : v) n2 += std::norm(x);
        const double n = std::sqrt(n2);
        for (auto& x : v) x /= n;
        return v;
    }

    Polynomial polynomial(std::size_t m, PolyKind kind) {
        Polynomial poly;
        const int n_terms = std::uniform_int_distribution<int>(2, 5)(rng_);
        std::uniform_int_distribution<std::size_t> idx(0, m - 1);
        std::uniform_int_distribution<int> deg(0, 3);
        for (int k = 0; k < n_terms; ++k) {
            Monomial t{scalar(), idx(rng_), deg(rng_), idx(rng_), deg(rng_)};
            if (kind == PolyKind::holomorphic) t.q = 0;
            if (kind == PolyKind::antiholomorphic) t.p = 0;
            poly.terms.push_back(t);
        }
        return poly;
    }

private:
    std::mt19937_64 rng_;
    int max_dim_;
};

constexpr double kPropertyStep = 1e-5;

std::string describe_point(CSpan w) {
    std::ostringstream os;
    os.precision(17);
    os << "m=" << w.size() << " w=[";
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j) os << ", ";
        os << w[j].real() << (w[j].imag() < 0 ? "-" : "+") << std::abs(w[j].imag()) << "i";
    }
    os << "]";
    return os.str();
}

double vec_error(CSpan got, CSpan ref) {
    return diff_inf_norm(got, ref) / std::max(1.0, inf_norm(ref));
}

CVec conj_of(CSpan v) {
    CVec out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = std::conj(v[j]);
    return out;
}

CVec negate(CVec v) {
    for (auto& x : v) x = -x;
    return v;
}

WirtingerPair negate(WirtingerPair p) {
    return {negate(std::move(p.d_z)), negate(std::move(p.d_zstar))};
}

class PropertyRunner {
public:
    PropertyRunner(const SuiteOptions& opt, PropertyResult& result) : opt_(opt), r_(result) {}

    void record(double err, CSpan w) {
        ++r_.trials;
        r_.max_error = std::max(r_.max_error, err);
        if (!(err < opt_.tolerance) && r_.passed) {
            r_.passed = false;
            std::ostringstream os;
            os.precision(6);
            os << describe_point(w) << " error=" << err;
            r_.witness = os.str();
        }
    }

    template <class T>
    T maybe_flip(T ref) const {
        return opt_.inject_sign_error ? negate(std::move(ref)) : ref;
    }

private:
    const SuiteOptions& opt_;
    PropertyResult& r_;
};

} // namespace

SuiteReport property_suite(std::uint64_t seed, const SuiteOptions& opt) {
    SuiteReport report;
    report.seed = seed;
    report.tolerance = opt.tolerance;
    Sampler rng(seed, opt.max_dimension);
    const double h = kPropertyStep;

    auto add = [&](int number, std::string name) -> PropertyResult& {
        report.results.push_back({number, std::move(name), true, 0, 0.0, {}});
        return report.results.back();
    };
    report.results.reserve(11);

    {
        auto& res = add(1, "holomorphic T has zero conjugate derivative");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto poly = rng.polynomial(m, PolyKind::holomorphic);
            const auto w = rng.vector(m);
            auto ref = poly.derivatives(w);
            ref.d_zstar.assign(m, cplx{});
            run.record(relative_error(numeric_wirtinger(poly, w, h), run.maybe_flip(ref)), w);
        }
    }
    {
        auto& res = add(2, "anti-holomorphic T has zero R-derivative");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto poly = rng.polynomial(m, PolyKind::antiholomorphic);
            const auto w = rng.vector(m);
            auto ref = poly.derivatives(w);
            ref.d_z.assign(m, cplx{});
            run.record(relative_error(numeric_wirtinger(poly, w, h), run.maybe_flip(ref)), w);
        }
    }
    {
        auto& res = add(3, "conj(dT/dz) = d(T*)/dz*");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto poly = rng.polynomial(m, PolyKind::mixed);
            const auto w = rng.vector(m);
            const ScalarField conj_t = [&](CSpan z) { return std::conj(poly(z)); };
            const auto lhs = conj_of(poly.derivatives(w).d_z);
            const auto rhs = numeric_wirtinger(conj_t, w, h).d_zstar;
            run.record(vec_error(lhs, run.maybe_flip(rhs)), w);
        }
    }
    {
        auto& res = add(4, "conj(dT/dz*) = d(T*)/dz");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto poly = rng.polynomial(m, PolyKind::mixed);
            const auto w = rng.vector(m);
            const ScalarField conj_t = [&](CSpan z) { return std::conj(poly(z)); };
            const auto lhs = conj_of(poly.derivatives(w).d_zstar);
            const auto rhs = numeric_wirtinger(conj_t, w, h).d_z;
            run.record(vec_error(lhs, run.maybe_flip(rhs)), w);
        }
    }
    {
        auto& res = add(5, "real-valued T: conj(dT/dz) = dT/dz*");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto poly = rng.polynomial(m, PolyKind::mixed);
            const auto w = rng.vector(m);
            // T = P + P*, so dT/dz = dP/dz + conj(dP/dz*).
            const ScalarField real_t = [&](CSpan z) { return cplx{2.0 * poly(z).real(), 0.0}; };
            const auto dp = poly.derivatives(w);
            CVec d_z(m);
            for (std::size_t j = 0; j < m; ++j) d_z[j] = dp.d_z[j] + std::conj(dp.d_zstar[j]);
            const auto d = numeric_wirtinger(real_t, w, h);
            run.record(vec_error(conj_of(d_z), run.maybe_flip(d.d_zstar)), w);
        }
    }
    {
        // Remainder r(eps) = |T(f + eps h) - T(f) - <eps h, (dT/dz)*> - <eps h*, (dT/dz*)*>|
        // must vanish faster than eps: r/eps shrinks by two decades over two decades of eps.
        auto& res = add(6, "first-order Taylor expansion");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto poly = rng.polynomial(m, PolyKind::mixed);
            const auto w = rng.vector(m);
            const auto dir = rng.unit_vector(m);
            const auto d = run.maybe_flip(numeric_wirtinger(poly, w, h));
            const cplx t0 = poly(w);
            auto ratio = [&](double eps) {
                CVec step(m), moved(m);
                for (std::size_t j = 0; j < m; ++j) {
                    step[j] = eps * dir[j];
                    moved[j] = w[j] + step[j];
                }
                const cplx lin = inner(step, conj_of(d.d_z)) + inner(conj_of(step), conj_of(d.d_zstar));
                return std::abs(poly(moved) - t0 - lin) / eps;
            };
            const double coarse = ratio(1e-2);
            const double fine = ratio(1e-4);
            run.record(std::max(0.0, fine - 0.05 * coarse), w);
        }
    }
    {
        auto& res = add(7, "T = <f, w>: dT/dz = w*, dT/dz* = 0");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto wv = rng.vector(m);
            const auto f0 = rng.vector(m);
            const ScalarField field = [&](CSpan f) { return inner(f, wv); };
            WirtingerPair ref{conj_of(wv), CVec(m)};
            run.record(relative_error(numeric_wirtinger(field, f0, h), run.maybe_flip(ref)), f0);
        }
    }
    {
        auto& res = add(8, "T = <w, f>: dT/dz = 0, dT/dz* = w");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto wv = rng.vector(m);
            const auto f0 = rng.vector(m);
            const ScalarField field = [&](CSpan f) { return inner(wv, f); };
            WirtingerPair ref{CVec(m), wv};
            run.record(relative_error(numeric_wirtinger(field, f0, h), run.maybe_flip(ref)), f0);
        }
    }
    {
        auto& res = add(9, "T = <f*, w>: dT/dz = 0, dT/dz* = w*");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto wv = rng.vector(m);
            const auto f0 = rng.vector(m);
            const ScalarField field = [&](CSpan f) { return inner(conj_of(f), wv); };
            WirtingerPair ref{CVec(m), conj_of(wv)};
            run.record(relative_error(numeric_wirtinger(field, f0, h), run.maybe_flip(ref)), f0);
        }
    }
    {
        auto& res = add(10, "T = <w, f*>: dT/dz = w, dT/dz* = 0");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto wv = rng.vector(m);
            const auto f0 = rng.vector(m);
            const ScalarField field = [&](CSpan f) { return inner(wv, conj_of(f)); };
            WirtingerPair ref{wv, CVec(m)};
            run.record(relative_error(numeric_wirtinger(field, f0, h), run.maybe_flip(ref)), f0);
        }
    }
    {
        auto& res = add(11, "product rule for holomorphic R, S");
        PropertyRunner run(opt, res);
        for (int t = 0; t < opt.trials; ++t) {
            const auto m = rng.dimension();
            const auto r_poly = rng.polynomial(m, PolyKind::holomorphic);
            const auto s_poly = rng.polynomial(m, PolyKind::holomorphic);
            const auto w = rng.vector(m);
            const ScalarField product = [&](CSpan z) { return r_poly(z) * s_poly(z); };
            const auto lhs = numeric_wirtinger(product, w, h).d_z;
            const auto dr = numeric_wirtinger(r_poly, w, h).d_z;
            const auto ds = numeric_wirtinger(s_poly, w, h).d_z;
            const cplx r_val = r_poly(w);
            const cplx s_val = s_poly(w);
            CVec rhs(m);
            for (std::size_t j = 0; j < m; ++j) rhs[j] = dr[j] * s_val + ds[j] * r_val;
            run.record(vec_error(lhs, run.maybe_flip(rhs)), w);
        }
    }
    return report;
}

} // namespace ckaf::wirtinger
