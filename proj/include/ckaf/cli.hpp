#pragma once

#include "ckaf/channel_bench.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace ckaf::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Subcommand { equalize, gradcheck };

struct CliConfig {
    Subcommand subcommand = Subcommand::equalize;
    std::string algorithm = "all"; // cklms | nclms | wl-nclms | all
    std::size_t samples = 5000;
    int runs = 20;
    double rho = 0.70710678118654752;
    double snr_db = 15.0;
    std::optional<double> mu; // unset: per-algorithm default
    std::string kernel = "gaussian";
    double sigma = 5.0;
    int degree = 2;
    std::size_t filter_length = 5;
    std::size_t delay = 2;
    double novelty_d1 = 0.15;
    double novelty_d2 = 0.2;
    std::uint64_t seed = 1;
    std::size_t smooth = 1;
    std::string output = "learning_curves.csv";
};

inline constexpr double kDefaultMuKernel = 0.5;
inline constexpr double kDefaultMuLinear = 1.0 / 16.0;

struct ParseOutcome {
    std::optional<CliConfig> config; // empty: stop with exit_code
    int exit_code = kExitOk;
};

/// Parses `ckaf <equalize|gradcheck> [flags]`. Usage errors print the message
/// and usage text to `err` and yield kExitUsage; --help prints to `out`.
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Experiment settings implied by a parsed configuration.
bench::ExperimentConfig to_experiment(const CliConfig& cfg);

/// One-line `key=value` rendering of the effective configuration.
std::string describe(const CliConfig& cfg);

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CSV layout: header `n,algorithm,mse,mse_db,dict_size`, then a `#` line with
/// the effective configuration, then one row per (n, algorithm) with n
/// starting at 1 and algorithms interleaved per n. Reals use 17 significant digits.
void write_csv(std::ostream& os, const std::map<bench::Algorithm, bench::LearningCurve>& curves,
               const CliConfig& cfg);

/// write_csv to `path` ("-" means stdout). Throws OutputError when the file
/// cannot be written.
void emit_csv(const std::map<bench::Algorithm, bench::LearningCurve>& curves, const CliConfig& cfg,
              const std::string& path);

/// Runs the calculus property suite, the worked example and the CKLMS
/// surrogate gradient check; prints a pass/fail table. Returns kExitOk iff all
/// pass. `inject_sign_error` negates every analytic reference (test hook).
int run_gradcheck(std::uint64_t seed, std::ostream& out, bool inject_sign_error = false);

int run_equalize(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ckaf::cli
