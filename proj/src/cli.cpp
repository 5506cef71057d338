#include "ckaf/cli.hpp"

#include "ckaf/surrogate.hpp"
#include "ckaf/wirtinger.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace ckaf::cli {

namespace {

void add_equalize_options(CLI::App& sub, CliConfig& cfg, double& mu_value) {
    sub.add_option("--algorithm", cfg.algorithm, "cklms, nclms, wl-nclms or all")
        ->check(CLI::IsMember({"cklms", "nclms", "wl-nclms", "all"}))
        ->capture_default_str();
    sub.add_option("--samples", cfg.samples, "Stream length")->check(CLI::PositiveNumber)->capture_default_str();
    sub.add_option("--runs", cfg.runs, "Monte-Carlo runs")->check(CLI::PositiveNumber)->capture_default_str();
    sub.add_option("--rho", cfg.rho, "Source circularity in [0, 1]")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sub.add_option("--snr-db", cfg.snr_db, "Receiver SNR in dB")->capture_default_str();
    sub.add_option("--mu", mu_value, "Step size of the selected algorithm (not with --algorithm all)")
        ->check(CLI::NonNegativeNumber);
    sub.add_option("--kernel", cfg.kernel, "gaussian or polynomial")
        ->check(CLI::IsMember({"gaussian", "polynomial"}))
        ->capture_default_str();
    sub.add_option("--sigma", cfg.sigma, "Gaussian kernel width")->check(CLI::PositiveNumber)->capture_default_str();
    sub.add_option("--degree", cfg.degree, "Polynomial kernel degree")->check(CLI::PositiveNumber)->capture_default_str();
    sub.add_option("--filter-length", cfg.filter_length, "Equalizer length L (L+1 taps)")->capture_default_str();
    sub.add_option("--delay", cfg.delay, "Equalization delay D")->capture_default_str();
    sub.add_option("--novelty-d1", cfg.novelty_d1, "Novelty distance threshold (0 with d2=0 disables)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub.add_option("--novelty-d2", cfg.novelty_d2, "Novelty error threshold")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    sub.add_option("--smooth", cfg.smooth, "Moving-average window for the mse column")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub.add_option("--output", cfg.output, "CSV path, - for stdout")->capture_default_str();
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Complex kernel adaptive filtering: channel equalization and gradient checks", "ckaf"};
    app.require_subcommand(1, 1);

    CliConfig cfg;
    double mu_value = 0.0;
    auto* equalize = app.add_subcommand("equalize", "Monte-Carlo nonlinear channel equalization, CSV learning curves");
    add_equalize_options(*equalize, cfg, mu_value);

    auto* gradcheck = app.add_subcommand("gradcheck", "Numerical Wirtinger-calculus and CKLMS gradient checks");
    gradcheck->add_option("--seed", cfg.seed, "Seed of the randomized trials")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return {std::nullopt, kExitOk};
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return {std::nullopt, kExitOk};
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return {std::nullopt, kExitUsage};
    }

    if (gradcheck->parsed()) {
        cfg.subcommand = Subcommand::gradcheck;
        return {cfg, kExitOk};
    }
    cfg.subcommand = Subcommand::equalize;
    if (equalize->count("--mu") > 0) {
        if (cfg.algorithm == "all") {
            err << "error: --mu cannot be combined with --algorithm all (each algorithm keeps its default step)\n\n"
                << equalize->help();
            return {std::nullopt, kExitUsage};
        }
        cfg.mu = mu_value;
    }
    return {cfg, kExitOk};
}

bench::ExperimentConfig to_experiment(const CliConfig& cfg) {
    bench::ExperimentConfig ex;
    if (cfg.algorithm == "all") {
        ex.algorithms = {bench::Algorithm::cklms, bench::Algorithm::nclms, bench::Algorithm::wl_nclms};
    } else {
        const auto a = bench::parse_algorithm(cfg.algorithm);
        if (!a) throw std::invalid_argument("unknown algorithm: " + cfg.algorithm);
        ex.algorithms = {*a};
    }
    ex.samples = cfg.samples;
    ex.runs = cfg.runs;
    ex.seed = cfg.seed;
    ex.channel.rho = cfg.rho;
    ex.channel.snr_db = cfg.snr_db;
    ex.filter_length = cfg.filter_length;
    ex.delay = cfg.delay;
    ex.kernel = cfg.kernel == "polynomial" ? RealKernel::polynomial(cfg.degree) : RealKernel::gaussian(cfg.sigma);
    ex.mu_cklms = cfg.mu.value_or(kDefaultMuKernel);
    ex.mu_nclms = cfg.mu.value_or(kDefaultMuLinear);
    ex.mu_wl_nclms = cfg.mu.value_or(kDefaultMuLinear);
    if (cfg.novelty_d1 == 0.0 && cfg.novelty_d2 == 0.0) {
        ex.novelty.reset();
    } else {
        ex.novelty = NoveltyCriterion{cfg.novelty_d1, cfg.novelty_d2};
    }
    return ex;
}

std::string describe(const CliConfig& cfg) {
    std::ostringstream os;
    os << "algorithm=" << cfg.algorithm << " samples=" << cfg.samples << " runs=" << cfg.runs
       << " rho=" << fmt_real(cfg.rho) << " snr_db=" << fmt_real(cfg.snr_db);
    if (cfg.algorithm == "all") {
        os << " mu_cklms=" << fmt_real(kDefaultMuKernel) << " mu_nclms=" << fmt_real(kDefaultMuLinear)
           << " mu_wl_nclms=" << fmt_real(kDefaultMuLinear);
    } else {
        const double def = cfg.algorithm == "cklms" ? kDefaultMuKernel : kDefaultMuLinear;
        os << " mu=" << fmt_real(cfg.mu.value_or(def));
    }
    os << " kernel=" << cfg.kernel;
    if (cfg.kernel == "gaussian") {
        os << " sigma=" << fmt_real(cfg.sigma);
    } else {
        os << " degree=" << cfg.degree;
    }
    os << " filter_length=" << cfg.filter_length << " delay=" << cfg.delay
       << " novelty_d1=" << fmt_real(cfg.novelty_d1) << " novelty_d2=" << fmt_real(cfg.novelty_d2)
       << " seed=" << cfg.seed << " smooth=" << cfg.smooth;
    return os.str();
}

void write_csv(std::ostream& os, const std::map<bench::Algorithm, bench::LearningCurve>& curves,
               const CliConfig& cfg) {
    if (curves.empty()) throw std::invalid_argument("write_csv: no curves");
    std::vector<std::pair<std::string_view, bench::LearningCurve>> ordered;
    for (const auto& [alg, curve] : curves) {
        ordered.emplace_back(bench::algorithm_name(alg), bench::smooth(curve, cfg.smooth));
    }
    const std::size_t n = ordered.front().second.mse.size();
    for (const auto& [name, c] : ordered) {
        if (c.mse.size() != n) throw std::invalid_argument("write_csv: curves differ in length");
    }

    os << "n,algorithm,mse,mse_db,dict_size\n";
    os << "# ckaf equalize " << describe(cfg) << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [name, c] : ordered) {
            os << (i + 1) << ',' << name << ',' << fmt_real(c.mse[i]) << ',' << fmt_real(c.mse_db[i]) << ','
               << fmt_real(c.dict_size[i]) << '\n';
        }
    }
}

void emit_csv(const std::map<bench::Algorithm, bench::LearningCurve>& curves, const CliConfig& cfg,
              const std::string& path) {
    if (path == "-") {
        write_csv(std::cout, curves, cfg);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot open " + path + " for writing");
    write_csv(file, curves, cfg);
    file.close();
    if (!file) throw OutputError("failed writing " + path);
}

int run_gradcheck(std::uint64_t seed, std::ostream& out, bool inject_sign_error) {
    bool ok = true;
    char line[256];
    auto row = [&](const std::string& label, bool passed, int trials, double err) {
        std::snprintf(line, sizeof line, "%-56s %5d  %10.3e  %s\n", label.c_str(), trials, err,
                      passed ? "PASS" : "FAIL");
        out << line;
        ok = ok && passed;
    };

    out << "gradcheck seed=" << seed << (inject_sign_error ? " (sign error injected)" : "") << '\n';
    std::snprintf(line, sizeof line, "%-56s %5s  %10s  %s\n", "check", "n", "max err", "result");
    out << line;

    // T(z) = z (z*)^2: dT/dz = (z*)^2, dT/dz* = 2 z z*.
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        const wirtinger::ScalarField field = [](CSpan z) { return z[0] * std::conj(z[0]) * std::conj(z[0]); };
        const wirtinger::AnalyticGradient grad = [&](CSpan z) {
            const cplx zs = std::conj(z[0]);
            const double sign = inject_sign_error ? -1.0 : 1.0;
            return wirtinger::WirtingerPair{{sign * zs * zs}, {sign * 2.0 * z[0] * zs}};
        };
        double worst = 0.0;
        bool passed = true;
        std::string witness;
        for (int t = 0; t < 20; ++t) {
            const CVec w{{u(rng), u(rng)}};
            const auto rep = wirtinger::check_gradient(field, grad, w, 1e-6);
            worst = std::max(worst, rep.best_error);
            if (!rep.passed && passed) {
                passed = false;
                std::ostringstream os;
                os.precision(17);
                os << "w=" << w[0];
                witness = os.str();
            }
        }
        row("worked example T = z (z*)^2", passed, 20, worst);
        if (!passed) out << "    witness: " << witness << '\n';
    }

    wirtinger::SuiteOptions opt;
    opt.inject_sign_error = inject_sign_error;
    const auto suite = wirtinger::property_suite(seed, opt);
    for (const auto& r : suite.results) {
        row("property " + std::to_string(r.property) + ": " + r.name, r.passed, r.trials, r.max_error);
        if (!r.passed) out << "    witness: " << r.witness << '\n';
    }

    const auto sur = surrogate::gradient_check(seed, 50, 1e-5, inject_sign_error);
    row("cklms cost gradient -conj(e) Phi(z) (poly d=2)", sur.passed(), sur.trials, sur.worst_error);
    if (!sur.passed()) out << "    witness: " << sur.witness << '\n';

    out << (ok ? "all checks passed\n" : "gradient check FAILED\n");
    return ok ? kExitOk : kExitCheckFailed;
}

int run_equalize(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    std::map<bench::Algorithm, bench::LearningCurve> curves;
    try {
        curves = bench::run_experiment(to_experiment(cfg));
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "experiment failed: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    try {
        emit_csv(curves, cfg, cfg.output);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    std::ostream& log = cfg.output == "-" ? err : out;
    const std::size_t tail = std::min<std::size_t>(500, cfg.samples);
    for (const auto& [alg, c] : curves) {
        char line[160];
        std::snprintf(line, sizeof line, "%-9s steady-state mse (last %zu) %8.3f dB  final dictionary %.1f\n",
                      std::string(bench::algorithm_name(alg)).c_str(), tail,
                      bench::to_db(bench::steady_state_mse(c, tail)), c.dict_size.back());
        log << line;
    }
    if (cfg.output != "-") log << "wrote " << cfg.output << '\n';
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const auto parsed = parse_args(argc, argv, out, err);
    if (!parsed.config) return parsed.exit_code;
    const auto& cfg = *parsed.config;
    if (cfg.subcommand == Subcommand::gradcheck) return run_gradcheck(cfg.seed, out);
    return run_equalize(cfg, out, err);
}

} // namespace ckaf::cli
