#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ckaf/channel_bench.hpp"
#include "ckaf/cklms.hpp"
#include "ckaf/surrogate.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace ckaf;

namespace {

CklmsConfig gaussian_config(double sigma, double mu, bool normalized,
                            std::optional<NoveltyCriterion> novelty = std::nullopt) {
    return {RealKernel::gaussian(sigma), mu, normalized, novelty};
}

} // namespace

TEST_CASE("empty dictionary predicts zero") {
    CklmsFilter f(gaussian_config(1.0, 0.5, true));
    CHECK(f.predict(CVec{{1.0, 2.0}, {3.0, 4.0}}) == cplx{});
    CHECK(f.dictionary_size() == 0);
}

TEST_CASE("single entry evaluated at its own center") {
    CklmsFilter f(gaussian_config(2.0, 0.5, true));
    const CVec z{{0.3, -0.1}};
    f.step(z, {0.7, -0.4});
    REQUIRE(f.dictionary_size() == 1);
    const double a = f.dictionary()[0].coeff.real();
    const double b = f.dictionary()[0].coeff.imag();
    const cplx y = f.predict(z);
    CHECK(y.real() == doctest::Approx(a + b).epsilon(1e-15));
    CHECK(y.imag() == doctest::Approx(a - b).epsilon(1e-15));
}

TEST_CASE("far-away dictionary predicts nearly zero") {
    CklmsFilter f(gaussian_config(1.0, 0.5, true));
    f.step(CVec{{0.0, 0.0}}, {1.0, 1.0});
    f.step(CVec{{0.5, 0.5}}, {-1.0, 2.0});
    CHECK(std::abs(f.predict(CVec{{100.0, -100.0}})) < 1e-300);
}

TEST_CASE("first NCKLMS step arithmetic") {
    CklmsFilter f(gaussian_config(5.0, 0.5, true));
    const auto st = f.step(CVec{{0.2, 0.9}, {-1.0, 0.1}}, {1.0, 1.0});
    CHECK(st.prediction == cplx{});
    CHECK(st.error == cplx{1.0, 1.0});
    CHECK(st.admitted);
    CHECK(f.dictionary()[0].coeff == cplx{0.5, 0.0});
}

TEST_CASE("zero error is discarded under the novelty criterion") {
    CklmsFilter f(gaussian_config(5.0, 0.5, true, NoveltyCriterion{0.15, 0.2}));
    f.step(CVec{{0.0, 0.0}}, {1.0, 0.0});
    REQUIRE(f.dictionary_size() == 1);
    // A far input whose target equals the prediction.
    const CVec z{{3.0, 3.0}};
    const auto st = f.step(z, f.predict(z));
    CHECK(st.error == cplx{});
    CHECK_FALSE(st.admitted);
    CHECK(f.dictionary_size() == 1);
}

TEST_CASE("admit rules") {
    const NoveltyCriterion nc{0.15, 0.2};
    CklmsFilter f(gaussian_config(5.0, 0.5, true, nc));
    const CVec z0{{0.1, 0.2}};
    CHECK(f.admit(z0, {0.2, 0.0}));
    CHECK_FALSE(f.admit(z0, {0.1, 0.0}));
    f.step(z0, {1.0, 0.0});
    CHECK_FALSE(f.admit(z0, {100.0, 0.0}));

    // dis^2 = 4 (1 - kappa) < delta1^2  <=>  kappa > 1 - delta1^2 / 4 = 0.994375
    const double kappa_edge = 1.0 - nc.delta1 * nc.delta1 / 4.0;
    CHECK(kappa_edge == doctest::Approx(0.994375));
    const double radius = 5.0 * std::sqrt(-std::log(kappa_edge));
    CHECK_FALSE(f.admit(CVec{z0[0] + cplx{0.98 * radius, 0.0}}, {10.0, 0.0}));
    CHECK(f.admit(CVec{z0[0] + cplx{1.02 * radius, 0.0}}, {10.0, 0.0}));

    CklmsFilter plain(gaussian_config(5.0, 0.5, true));
    plain.step(z0, {1.0, 0.0});
    CHECK(plain.admit(z0, {0.0, 0.0}));
}

TEST_CASE("dictionary grows by one per sample without novelty") {
    std::mt19937_64 rng(6);
    CklmsFilter f(gaussian_config(2.0, 0.5, true));
    const auto z = test::random_stream(rng, 50, 3);
    for (std::size_t n = 0; n < z.size(); ++n) {
        f.step(z[n], {1.0, -1.0});
        CHECK(f.dictionary_size() == n + 1);
    }
}

TEST_CASE("real stream reduces to real KLMS with step 2 mu") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    const double mu = 0.2;
    const double sigma = 1.5;
    std::vector<std::vector<double>> xs;
    std::vector<double> ds;
    std::vector<CVec> zs;
    for (int n = 0; n < 300; ++n) {
        std::vector<double> x{g(rng), g(rng)};
        ds.push_back(std::sin(x[0]) + 0.5 * x[1] * x[1]);
        zs.push_back(CVec{{x[0], 0.0}, {x[1], 0.0}});
        xs.push_back(std::move(x));
    }
    const auto expect = test::klms_predictions(xs, ds, 2.0 * mu, sigma);
    CklmsFilter f(gaussian_config(sigma, mu, false));
    for (std::size_t n = 0; n < zs.size(); ++n) {
        const auto st = f.step(zs[n], {ds[n], 0.0});
        CHECK(st.prediction.imag() == 0.0);
        CHECK(std::abs(st.prediction.real() - expect[n]) < 1e-12);
    }
}

TEST_CASE("(a, b) bookkeeping matches the scaled complex-error form") {
    std::mt19937_64 rng(8);
    for (bool normalized : {false, true}) {
        const auto kernel = RealKernel::gaussian(2.0);
        const auto z = test::random_stream(rng, 200, 3);
        const auto d = test::random_stream(rng, 1, 200).front();
        const auto expect = test::cklms_error_form(z, d, kernel, 0.3, normalized);
        CklmsFilter f({kernel, 0.3, normalized, std::nullopt});
        for (std::size_t n = 0; n < z.size(); ++n) {
            CHECK(std::abs(f.step(z[n], d[n]).prediction - expect[n]) < 1e-12);
        }
    }
}

TEST_CASE("polynomial CKLMS equals complex LMS on explicit features") {
    std::mt19937_64 rng(9);
    for (int degree : {1, 2}) {
        for (bool normalized : {false, true}) {
            const auto z = test::random_stream(rng, 120, 2, 0.5);
            const auto d = test::random_stream(rng, 1, 120, 0.5).front();
            const double mu = normalized ? 0.5 : 0.05;
            const auto expect = test::explicit_feature_lms(z, d, degree, mu, normalized);
            CklmsFilter f({RealKernel::polynomial(degree), mu, normalized, std::nullopt});
            for (std::size_t n = 0; n < z.size(); ++n) {
                const cplx got = f.step(z[n], d[n]).prediction;
                CHECK(std::abs(got - expect[n]) < 1e-10 * std::max(1.0, std::abs(expect[n])));
            }
        }
    }
}

TEST_CASE("explicit features reproduce the complexified kernel") {
    std::mt19937_64 rng(10);
    for (int degree : {1, 2}) {
        const auto k = RealKernel::polynomial(degree);
        for (int t = 0; t < 20; ++t) {
            const auto s = test::random_stream(rng, 2, 3);
            const auto pa = surrogate::complexified_features(s[0], degree);
            const auto pb = surrogate::complexified_features(s[1], degree);
            cplx ip{};
            for (std::size_t j = 0; j < pa.size(); ++j) ip += pa[j] * std::conj(pb[j]);
            CHECK(ip.real() == doctest::Approx(2.0 * k.eval(s[0], s[1])).epsilon(1e-12));
            CHECK(std::abs(ip.imag()) < 1e-12);
        }
    }
    CHECK_THROWS_AS(surrogate::polynomial_features(std::vector<double>{1.0}, 3), std::invalid_argument);
}

TEST_CASE("instantaneous cost gradient passes the Wirtinger check") {
    const auto report = surrogate::gradient_check(42, 50, 1e-5);
    INFO(report.witness);
    CHECK(report.passed());
    CHECK(report.trials == 50);
    CHECK(report.worst_error < 1e-5);
    CHECK_FALSE(surrogate::gradient_check(42, 5, 1e-5, true).passed());
}

TEST_CASE("real streams give exactly real predictions and a = b coefficients") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    CklmsFilter f(gaussian_config(1.0, 0.5, true, NoveltyCriterion{0.1, 0.05}));
    for (int n = 0; n < 400; ++n) {
        const CVec z{{g(rng), 0.0}, {g(rng), 0.0}};
        const auto st = f.step(z, {std::tanh(z[0].real() - z[1].real()), 0.0});
        CHECK(st.prediction.imag() == 0.0);
    }
    for (const auto& e : f.dictionary()) CHECK(e.coeff.real() == e.coeff.imag());
}

TEST_CASE("dictionary is monotone and bounded by samples seen") {
    std::mt19937_64 rng(12);
    CklmsFilter f(gaussian_config(1.0, 0.5, true, NoveltyCriterion{0.3, 0.1}));
    const auto z = test::random_stream(rng, 500, 2, 0.5);
    std::size_t prev = 0;
    for (std::size_t n = 0; n < z.size(); ++n) {
        f.step(z[n], z[n][0] * z[n][1]);
        CHECK(f.dictionary_size() >= prev);
        CHECK(f.dictionary_size() <= n + 1);
        prev = f.dictionary_size();
    }
    CHECK(f.samples_seen() == 500);
    CHECK(prev < 500);
}

TEST_CASE("invalid inputs leave the filter untouched") {
    CklmsFilter f(gaussian_config(1.0, 0.5, true));
    f.step(CVec{{1.0, 0.0}, {0.0, 1.0}}, {1.0, 0.0});
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(f.step(CVec{{inf, 0.0}, {0.0, 1.0}}, {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(f.step(CVec{{1.0, 0.0}, {0.0, 1.0}}, {0.0, std::nan("")}), std::domain_error);
    CHECK_THROWS_AS(f.step(CVec{{1.0, 0.0}}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(f.predict(CVec(3)), std::invalid_argument);
    CHECK(f.dictionary_size() == 1);
    CHECK(f.samples_seen() == 1);
    CHECK_THROWS_AS(CklmsFilter(gaussian_config(1.0, -0.5, true)), std::invalid_argument);
}

TEST_CASE("dictionary text round trip") {
    std::mt19937_64 rng(13);
    CklmsFilter f(gaussian_config(2.0, 0.5, true));
    const auto z = test::random_stream(rng, 30, 3);
    for (const auto& v : z) f.step(v, v[0] - v[2]);

    std::stringstream ss;
    f.write_dictionary(ss);
    std::string first_line;
    std::getline(std::istringstream(ss.str()), first_line);
    std::istringstream fl(first_line);
    int tokens = 0;
    for (double v; fl >> v;) ++tokens;
    CHECK(tokens == 2 * 3 + 2);

    CklmsFilter g(gaussian_config(2.0, 0.5, true));
    g.read_dictionary(ss);
    REQUIRE(g.dictionary_size() == f.dictionary_size());
    for (std::size_t k = 0; k < f.dictionary_size(); ++k) {
        CHECK(g.dictionary()[k].center == f.dictionary()[k].center);
        CHECK(g.dictionary()[k].coeff == f.dictionary()[k].coeff);
    }
    const auto probe = test::random_stream(rng, 1, 3).front();
    CHECK(g.predict(probe) == f.predict(probe));

    std::istringstream bad("1 2 3\n");
    CHECK_THROWS(g.read_dictionary(bad));
    std::istringstream junk("1 2 x 4\n");
    CHECK_THROWS(g.read_dictionary(junk));
}

TEST_CASE("stability on the equalization benchmark") {
    bench::ChannelConfig ch;
    const auto s = bench::generate_source(5002, ch.rho, ch.amplitude, 99);
    const auto r = bench::run_channel(ch, s, 100);
    const auto ds = bench::build_dataset(r, s, 5, 2);
    CklmsFilter f(gaussian_config(5.0, 0.5, true, NoveltyCriterion{0.15, 0.2}));
    for (std::size_t n = 0; n < ds.targets.size(); ++n) {
        const auto st = f.step(ds.inputs[n], ds.targets[n]);
        REQUIRE(std::isfinite(st.prediction.real()));
        REQUIRE(std::isfinite(st.prediction.imag()));
    }
    for (const auto& e : f.dictionary()) {
        CHECK(std::isfinite(e.coeff.real()));
        CHECK(std::isfinite(e.coeff.imag()));
    }
}
