#ifndef SPINENT_RUNNER_HPP
#define SPINENT_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinent/scaling.hpp"

namespace spinent {

/// A fully resolved experiment: measure + query + engine + output paths.
/// `resolved` echoes every field including defaulted ones.
struct ExperimentConfig {
    SpinMeasure measure;
    std::vector<double> n_list;     // "inf" parses to +infinity
    std::vector<long> m_grid;
    EngineSpec engine;
    std::string csv_path;
    std::string json_path;
    std::optional<std::pair<double, double>> fit_window;
    nlohmann::json resolved;
};

/// Exit codes shared by the CLI subcommands.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,     // verify: at least one check failed
    exit_config = 2,      // unparseable/invalid config or input
    exit_budget = 3,      // work budget exceeded
    exit_numerical = 4,   // numerical failure
};

/// Throws std::invalid_argument with a field-path diagnostic on any problem.
ExperimentConfig load_config(const std::string& path,
                             std::optional<std::uint64_t> seed_override = {},
                             std::optional<std::string> csv_override = {},
                             std::optional<std::string> json_override = {});

int run_entropy(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                std::optional<std::string> csv_override, std::optional<std::string> json_override,
                int verbosity);

int run_fit(const std::string& csv_path, double window_lo, double window_hi,
            const std::string& out_json_path, int verbosity);

int run_verify(const std::string& suite, int verbosity);

/// Parse a curve CSV written by run_entropy (comment lines ignored).
EntropyCurve read_curve_csv(const std::string& path);

/// The CSV serialization used by run_entropy (17 significant digits, LF).
std::string curve_to_csv(const EntropyCurve& curve, const nlohmann::json& resolved_config);

} // namespace spinent

#endif
