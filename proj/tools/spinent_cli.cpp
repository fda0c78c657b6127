#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "spinent/runner.hpp"

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("SPINENT_THREADS")) {
        const int t = std::atoi(threads);
        if (t > 0) omp_set_num_threads(t);
    }

    CLI::App app{"entanglement scaling of permutation-symmetric spin states"};
    app.require_subcommand(1);
    app.fallthrough();
    int verbosity = 0;
    app.add_flag("-v,--verbose", verbosity, "increase verbosity");

    auto* entropy = app.add_subcommand("entropy", "run an entropy-curve experiment from a config file");
    entropy->fallthrough();
    std::string config_path;
    entropy->add_option("config", config_path, "JSON experiment config")->required();
    std::optional<std::uint64_t> seed_override;
    entropy->add_option("--seed", seed_override, "override engine.seed");
    std::optional<std::string> csv_override, json_override;
    entropy->add_option("--csv", csv_override, "override output.csv path");
    entropy->add_option("--json", json_override, "override output.json path");

    auto* fit = app.add_subcommand("fit", "fit the log-slope of a curve CSV");
    fit->fallthrough();
    std::string curve_path, fit_out;
    std::pair<double, double> window{0.0, 0.0};
    fit->add_option("curve", curve_path, "curve CSV produced by 'entropy'")->required();
    fit->add_option("--window", window, "fit window m_lo m_hi")->required();
    fit->add_option("--out", fit_out, "write fit JSON here (default: stdout)");

    auto* verify = app.add_subcommand("verify", "run a named cross-check suite");
    verify->fallthrough();
    std::string suite;
    verify->add_option("suite", suite, "detA | oracles | reconstruction | recursion | geometry | all")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (entropy->parsed())
        return spinent::run_entropy(config_path, seed_override, csv_override, json_override,
                                    verbosity);
    if (fit->parsed())
        return spinent::run_fit(curve_path, window.first, window.second, fit_out, verbosity);
    return spinent::run_verify(suite, verbosity);
}
