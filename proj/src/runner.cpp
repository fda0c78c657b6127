#include "spinent/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "spinent/asymptotics.hpp"
#include "spinent/errors.hpp"
#include "spinent/oracles.hpp"
#include "spinent/quadrature.hpp"

namespace spinent {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& path, const std::string& msg) {
    throw std::invalid_argument("config field '" + path + "': " + msg);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) config_fail(path + key, "missing");
    return j.at(key);
}

double number_at(const json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return std::numeric_limits<double>::infinity();
    if (!j.is_number()) config_fail(path, "expected a number");
    return j.get<double>();
}

SpinMeasure measure_from_json(const json& jm, json& resolved) {
    const std::string family = require(jm, "family", "measure.").get<std::string>();
    resolved["family"] = family;
    if (family == "discrete") {
        const json& atoms = require(jm, "atoms", "measure.");
        if (!atoms.is_array() || atoms.empty()) config_fail("measure.atoms", "expected a nonempty array");
        DiscreteMeasure m;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const json& ja = atoms[i];
            const std::string path = "measure.atoms[" + std::to_string(i) + "].";
            const double w = number_at(require(ja, "weight", path), path + "weight");
            const json& comps = require(ja, "components", path);
            if (!comps.is_array() || comps.size() < 2)
                config_fail(path + "components", "expected an array of >= 2 [re, im] pairs");
            std::vector<cplx> c;
            for (const json& pair : comps) {
                if (!pair.is_array() || pair.size() != 2)
                    config_fail(path + "components", "each component must be [re, im]");
                c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
            }
            m.atoms.push_back({ProjectivePoint::canonicalize(c), w});
        }
        resolved["atoms"] = atoms;
        return m;
    }
    if (family == "torus") {
        const json& jp = require(jm, "p", "measure.");
        if (!jp.is_array() || jp.size() < 2) config_fail("measure.p", "expected >= 2 probabilities");
        TorusMeasure m;
        for (const json& x : jp) m.p.push_back(x.get<double>());
        resolved["p"] = jp;
        return m;
    }
    if (family == "density") {
        DensityMeasure m;
        m.dim = jm.value("dim", 1);
        resolved["dim"] = m.dim;
        const json& form = require(jm, "density", "measure.");
        const std::string kind = require(form, "form", "measure.density.").get<std::string>();
        resolved["density"]["form"] = kind;
        if (kind == "uniform") {
            const double vol = cp_integrate(m.dim, [](const SphericalChart&) { return 1.0; },
                                            1e-9, 16, m.dim == 1 ? 256 : 64)
                                   .value;
            const double f0 = 1.0 / vol;
            m.density = [f0](const SphericalChart&) { return f0; };
            m.envelope = f0 * 1.001;
        } else if (kind == "fs_gaussian") {
            const double width = number_at(require(form, "width", "measure.density."),
                                           "measure.density.width");
            if (!(width > 0.0)) config_fail("measure.density.width", "must be positive");
            resolved["density"]["width"] = width;
            SphericalChart center;
            center.theta.assign(static_cast<std::size_t>(m.dim), 0.0);
            center.phi.assign(static_cast<std::size_t>(m.dim), 0.25 * std::numbers::pi);
            const ProjectivePoint c0 = chart_to_point(center);
            auto raw = [c0, width](const SphericalChart& ch) {
                const double dist = fs_distance(chart_to_point(ch), c0);
                return std::exp(-(dist * dist) / (width * width));
            };
            const double norm = cp_integrate(m.dim, raw, 1e-8, 32, m.dim == 1 ? 256 : 64).value;
            m.density = [raw, norm](const SphericalChart& ch) { return raw(ch) / norm; };
            m.envelope = 1.0 / norm * 1.001;
        } else {
            config_fail("measure.density.form", "unknown form '" + kind + "'");
        }
        m.normalization_checked = true;
        return m;
    }
    if (family == "ifs") {
        IfsMeasure m = cantor_measure();
        if (jm.contains("ratio")) m.ratio = jm.at("ratio").get<double>();
        if (jm.contains("offsets")) {
            m.offsets.clear();
            for (const json& x : jm.at("offsets")) m.offsets.push_back(x.get<double>());
        }
        m.sample_depth = jm.value("sample_depth", m.sample_depth);
        const std::string embed = jm.value("embedding", std::string("great_circle"));
        if (embed != "great_circle")
            config_fail("measure.embedding", "unknown embedding '" + embed + "'");
        resolved["ratio"] = m.ratio;
        resolved["offsets"] = m.offsets;
        resolved["sample_depth"] = m.sample_depth;
        resolved["embedding"] = embed;
        return m;
    }
    config_fail("measure.family", "unknown family '" + family + "'");
}

std::vector<long> m_grid_from_json(const json& jq) {
    const json& jg = require(jq, "m_grid", "query.");
    std::vector<long> grid;
    if (jg.is_array()) {
        for (const json& x : jg) grid.push_back(x.get<long>());
    } else if (jg.is_object()) {
        const long from = require(jg, "from", "query.m_grid.").get<long>();
        const long to = require(jg, "to", "query.m_grid.").get<long>();
        const int points = require(jg, "points", "query.m_grid.").get<int>();
        const std::string spacing = jg.value("spacing", std::string("log"));
        if (from < 1 || to < from || points < 1)
            config_fail("query.m_grid", "need 1 <= from <= to and points >= 1");
        for (int i = 0; i < points; ++i) {
            const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
            double v;
            if (spacing == "log")
                v = std::exp(std::log(static_cast<double>(from)) +
                             t * (std::log(static_cast<double>(to)) - std::log(static_cast<double>(from))));
            else if (spacing == "linear")
                v = static_cast<double>(from) + t * static_cast<double>(to - from);
            else
                config_fail("query.m_grid.spacing", "expected 'log' or 'linear'");
            grid.push_back(static_cast<long>(std::llround(v)));
        }
    } else {
        config_fail("query.m_grid", "expected an array or {from,to,points}");
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) config_fail("query.m_grid", "empty grid");
    if (grid.front() < 1) config_fail("query.m_grid", "m >= 1 required");
    return grid;
}

EngineSpec engine_from_json(const json& je, json& resolved) {
    EngineSpec spec;
    const std::string type = require(je, "type", "engine.").get<std::string>();
    if (type == "discrete-transfer") spec.kind = EngineKind::discrete_transfer;
    else if (type == "dicke-exact") spec.kind = EngineKind::dicke_exact;
    else if (type == "torus-quadrature") spec.kind = EngineKind::torus_quadrature;
    else if (type == "monte-carlo") spec.kind = EngineKind::monte_carlo;
    else if (type == "asymptotic") spec.kind = EngineKind::asymptotic;
    else if (type == "ifs-transfer") spec.kind = EngineKind::ifs_transfer;
    else if (type == "ifs-gaussian") spec.kind = EngineKind::ifs_gaussian;
    else config_fail("engine.type", "unknown engine '" + type + "'");

    spec.dicke_sites = je.value("sites", spec.dicke_sites);
    spec.ifs_level = je.value("level", spec.ifs_level);
    spec.grid_points = je.value("grid_points", spec.grid_points);
    spec.mc_samples = je.value("samples", spec.mc_samples);
    spec.seed = je.value("seed", spec.seed);
    spec.trunc_bound = je.value("trunc_bound", spec.trunc_bound);
    spec.budget.log_floor = je.value("log_floor", spec.budget.log_floor);
    spec.budget.max_transfer_atoms_dense =
        je.value("max_dense_atoms", spec.budget.max_transfer_atoms_dense);
    spec.budget.max_grid_evaluations =
        je.value("max_grid_evaluations", spec.budget.max_grid_evaluations);

    resolved["type"] = type;
    resolved["sites"] = spec.dicke_sites;
    resolved["level"] = spec.ifs_level;
    resolved["grid_points"] = spec.grid_points;
    resolved["samples"] = spec.mc_samples;
    resolved["seed"] = spec.seed;
    resolved["trunc_bound"] = spec.trunc_bound;
    resolved["log_floor"] = spec.budget.log_floor;
    resolved["max_dense_atoms"] = spec.budget.max_transfer_atoms_dense;
    resolved["max_grid_evaluations"] = spec.budget.max_grid_evaluations;
    return spec;
}

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override,
                             std::optional<std::string> csv_override,
                             std::optional<std::string> json_override) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    json resolved;
    cfg.measure = measure_from_json(require(j, "measure", ""), resolved["measure"]);
    validate(cfg.measure);

    const json& jq = require(j, "query", "");
    const json& jn = require(jq, "n", "query.");
    if (jn.is_array())
        for (const json& x : jn) cfg.n_list.push_back(number_at(x, "query.n[]"));
    else
        cfg.n_list.push_back(number_at(jn, "query.n"));
    if (cfg.n_list.empty()) config_fail("query.n", "empty");
    for (double n : cfg.n_list)
        if (!(n >= 1.0)) config_fail("query.n", "n >= 1 required");
    cfg.m_grid = m_grid_from_json(jq);
    for (double n : cfg.n_list)
        resolved["query"]["n"].push_back(std::isinf(n) ? json("inf") : json(n));
    resolved["query"]["m_grid"] = cfg.m_grid;

    cfg.engine = engine_from_json(require(j, "engine", ""), resolved["engine"]);
    if (seed_override) {
        cfg.engine.seed = *seed_override;
        resolved["engine"]["seed"] = cfg.engine.seed;
    }

    const json jout = j.value("output", json::object());
    cfg.csv_path = jout.value("csv", std::string("curve.csv"));
    cfg.json_path = jout.value("json", std::string("meta.json"));
    if (csv_override) cfg.csv_path = *csv_override;
    if (json_override) cfg.json_path = *json_override;
    resolved["output"]["csv"] = cfg.csv_path;
    resolved["output"]["json"] = cfg.json_path;

    if (j.contains("fit")) {
        const json& jf = j.at("fit");
        const json& w = require(jf, "window", "fit.");
        if (!w.is_array() || w.size() != 2) config_fail("fit.window", "expected [lo, hi]");
        cfg.fit_window = std::make_pair(w[0].get<double>(), w[1].get<double>());
        resolved["fit"]["window"] = w;
    }
    cfg.resolved = std::move(resolved);
    return cfg;
}

std::string curve_to_csv(const EntropyCurve& curve, const json& resolved_config) {
    std::string out;
    out += "# spinent entropy curve\n";
    out += "# config: " + resolved_config.dump() + "\n";
    out += "# n: " + (std::isinf(curve.n) ? std::string("inf") : format17(curve.n)) + "\n";
    out += "# engine: " + curve.engine_tag + "\n";
    out += "# measure_hash: " + std::to_string(curve.measure_hash) + "\n";
    out += "m,S,stderr\n";
    for (const CurvePoint& pt : curve.points) {
        out += std::to_string(pt.m);
        out += ",";
        out += format17(pt.entropy);
        out += ",";
        out += format17(pt.std_error);
        out += "\n";
    }
    return out;
}

EntropyCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open curve file '" + path + "'");
    EntropyCurve curve;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "m,S,stderr")
                throw std::invalid_argument("curve file: expected header 'm,S,stderr'");
            header_seen = true;
            continue;
        }
        CurvePoint pt;
        char* end = nullptr;
        pt.m = std::strtol(line.c_str(), &end, 10);
        if (!end || *end != ',') throw std::invalid_argument("curve file: malformed row '" + line + "'");
        pt.entropy = std::strtod(end + 1, &end);
        if (!end || *end != ',') throw std::invalid_argument("curve file: malformed row '" + line + "'");
        pt.std_error = std::strtod(end + 1, nullptr);
        curve.points.push_back(pt);
    }
    if (!header_seen) throw std::invalid_argument("curve file: no header row");
    return curve;
}

namespace {

std::string csv_path_for_n(const std::string& base, double n, bool multiple) {
    if (!multiple) return base;
    const std::string tag = std::isinf(n) ? "inf" : [&] {
        std::ostringstream ss;
        ss << n;
        return ss.str();
    }();
    const std::size_t dot = base.rfind('.');
    if (dot == std::string::npos) return base + "_n" + tag;
    return base.substr(0, dot) + "_n" + tag + base.substr(dot);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << content;
}

} // namespace

int run_entropy(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                std::optional<std::string> csv_override, std::optional<std::string> json_override,
                int verbosity) {
    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path, seed_override, csv_override, json_override);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    try {
        const auto t0 = std::chrono::steady_clock::now();
        json meta;
        meta["config"] = cfg.resolved;
        meta["version"] = "spinent 1.0";
        meta["seed"] = cfg.engine.seed;
        const bool multiple = cfg.n_list.size() > 1;
        for (double n : cfg.n_list) {
            EntropyCurve curve = entropy_curve(cfg.measure, n, cfg.m_grid, cfg.engine);
            const std::string path = csv_path_for_n(cfg.csv_path, n, multiple);
            write_file(path, curve_to_csv(curve, cfg.resolved));
            json jc;
            jc["n"] = std::isinf(n) ? json("inf") : json(n);
            jc["csv"] = path;
            if (cfg.fit_window) {
                const ScalingFit fit = fit_log_slope(curve, cfg.fit_window->first,
                                                     cfg.fit_window->second);
                jc["fit"] = {{"slope", fit.slope},
                             {"intercept", fit.intercept},
                             {"residual_rms", fit.residual_rms},
                             {"window", {fit.window_lo, fit.window_hi}},
                             {"dimension_estimate", fit.dimension_estimate}};
            }
            meta["curves"].push_back(jc);
            if (verbosity > 0) std::cerr << "wrote " << path << "\n";
        }
        const auto t1 = std::chrono::steady_clock::now();
        meta["runtime_seconds"] =
            std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0).count();
        write_file(cfg.json_path, meta.dump(2) + "\n");
        if (verbosity > 0) std::cerr << "wrote " << cfg.json_path << "\n";
        return exit_ok;
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return exit_budget;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
}

int run_fit(const std::string& csv_path, double window_lo, double window_hi,
            const std::string& out_json_path, int verbosity) {
    try {
        const EntropyCurve curve = read_curve_csv(csv_path);
        const ScalingFit fit = fit_log_slope(curve, window_lo, window_hi);
        json out = {{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"residual_rms", fit.residual_rms},
                    {"window", {fit.window_lo, fit.window_hi}},
                    {"dimension_estimate", fit.dimension_estimate}};
        const std::string text = out.dump(2) + "\n";
        if (out_json_path.empty()) std::cout << text;
        else {
            write_file(out_json_path, text);
            if (verbosity > 0) std::cerr << "wrote " << out_json_path << "\n";
        }
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return exit_config;
    }
}

namespace {

struct VerifyTable {
    int failures = 0;
    void row(const std::string& name, bool pass, const std::string& detail) {
        std::printf("%-4s %-38s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        if (!pass) ++failures;
    }
};

void verify_detA(VerifyTable& table) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::uniform_int_distribution<int> pick_d(1, 4), pick_n(2, 6);
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
        const int D = pick_d(rng);
        const int n = pick_n(rng);
        TorusMeasure p;
        double sum = 0.0;
        for (int j = 0; j <= D; ++j) {
            p.p.push_back(unif(rng));
            sum += p.p.back();
        }
        for (double& x : p.p) x /= sum;
        const double closed = detA_closed(p, n);
        const double numeric = detA_numeric(p, n);
        worst = std::max(worst, std::abs(numeric / closed - 1.0));
    }
    table.row("detA closed vs assembled", worst <= 1e-9,
              "max rel err " + format17(worst) + " over 200 cases");
}

void verify_oracles(VerifyTable& table) {
    double worst = 0.0;
    for (int N = 2; N <= 8; ++N)
        for (int D = 1; D <= 2; ++D) {
            std::vector<DickeOccupation> occs;
            if (D == 1) {
                for (int a = 0; a <= N; ++a)
                    occs.push_back({{a, N - a}});
            } else {
                for (int a = 0; a <= N; ++a)
                    for (int b = 0; a + b <= N; ++b) occs.push_back({{a, b, N - a - b}});
            }
            for (const DickeOccupation& occ : occs)
                for (int m = 1; m < N; ++m) {
                    const BlockSpectrum spec = dicke_spectrum(occ, m);
                    const Eigen::VectorXcd state = symmetrize_dicke(occ);
                    std::vector<double> brute =
                        brute_force_reduced_spectrum(state, D + 1, N, m);
                    std::vector<double> hyper;
                    for (const SpectrumEntry& e : spec.entries) hyper.push_back(e.lambda);
                    std::sort(hyper.begin(), hyper.end(), std::greater<double>());
                    brute.resize(hyper.size(), 0.0);
                    for (std::size_t i = 0; i < hyper.size(); ++i)
                        worst = std::max(worst, std::abs(hyper[i] - brute[i]));
                }
        }
    table.row("dicke spectrum vs partial trace", worst <= 1e-10,
              "max abs err " + format17(worst) + " (N <= 8, D <= 2)");

    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst_pc = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
        ProductCombination pc;
        pc.n_sites = 10;
        for (int v = 0; v < 2; ++v) {
            pc.points.push_back(ProjectivePoint::canonicalize(
                {cplx(unif(rng), unif(rng)), cplx(unif(rng), unif(rng))}));
            pc.coefficients.emplace_back(unif(rng), unif(rng));
        }
        if (std::abs(overlap(pc.points[0], pc.points[1])) > 0.99) continue;
        Eigen::VectorXcd state = Eigen::VectorXcd::Zero(1 << pc.n_sites);
        for (std::size_t v = 0; v < pc.points.size(); ++v) {
            for (long long idx = 0; idx < state.size(); ++idx) {
                cplx amp = pc.coefficients[v];
                long long rest = idx;
                for (long long s = 0; s < pc.n_sites; ++s) {
                    amp *= pc.points[v][static_cast<std::size_t>(rest % 2)];
                    rest /= 2;
                }
                state(idx) += amp;
            }
        }
        for (int n = 2; n <= 3; ++n)
            for (int m : {3, 5}) {
                const double exact = product_combination_moment(pc, m, n);
                const std::vector<double> lam =
                    brute_force_reduced_spectrum(state, 2, static_cast<int>(pc.n_sites), m);
                double sum = 0.0;
                for (double l : lam) sum += std::pow(l, n);
                worst_pc = std::max(worst_pc, std::abs(exact - sum));
            }
    }
    table.row("combination moment vs partial trace", worst_pc <= 1e-10,
              "max abs err " + format17(worst_pc));

    const DickeOccupation occ{{3, 2}};
    const double symdiff = std::abs(dicke_renyi(occ, 2, 2.0) - dicke_renyi(occ, 3, 2.0));
    table.row("Schmidt symmetry m vs N-m", symdiff <= 1e-10, "diff " + format17(symdiff));
}

void verify_reconstruction(VerifyTable& table) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(0.2, 1.0);
    double worst = 0.0;
    for (int D = 1; D <= 2; ++D)
        for (int N = 1; N <= 5; ++N) {
            std::vector<DickeOccupation> occs;
            if (D == 1)
                for (int a = 0; a <= N; ++a) occs.push_back({{a, N - a}});
            else
                for (int a = 0; a <= N; ++a)
                    for (int b = 0; a + b <= N; ++b) occs.push_back({{a, b, N - a - b}});
            for (const DickeOccupation& occ : occs)
                for (int rep = 0; rep < 2; ++rep) {
                    std::vector<double> a(static_cast<std::size_t>(D) + 1);
                    double norm = 0.0;
                    for (double& x : a) {
                        x = unif(rng);
                        norm += x * x;
                    }
                    for (double& x : a) x /= std::sqrt(norm);
                    const Eigen::VectorXcd direct = symmetrize_dicke(occ);
                    const Eigen::VectorXcd rec = reconstruct_dicke(occ, a);
                    worst = std::max(worst, (direct - rec).cwiseAbs().maxCoeff());
                }
        }
    table.row("basis inversion vs symmetrization", worst <= 1e-10,
              "max abs err " + format17(worst) + " (N <= 5, D <= 2)");
}

void verify_recursion(VerifyTable& table) {
    const IfsMeasure cantor = cantor_measure();
    const std::vector<double> ms{1458.0, 2916.0, 5832.0};
    const RecursionReport rep =
        verify_cantor_recursion(cantor, 10, 2, ms, QmKernel::exact_overlap);
    table.row("Cantor Q_m recursion (n=2, k=10)", rep.max_deviation <= 0.10,
              "max ratio deviation " + format17(rep.max_deviation));
}

void verify_geometry(VerifyTable& table) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto random_point = [&rng, &unif](int D) {
        std::vector<cplx> c(static_cast<std::size_t>(D) + 1);
        for (cplx& z : c) z = cplx(unif(rng), unif(rng));
        return ProjectivePoint::canonicalize(c);
    };
    double worst_tri = 0.0;
    for (int c = 0; c < 10000; ++c) {
        const int D = 1 + c % 3;
        const ProjectivePoint a = random_point(D), b = random_point(D), d = random_point(D);
        worst_tri = std::max(worst_tri,
                             fs_distance(a, d) - fs_distance(a, b) - fs_distance(b, d));
    }
    table.row("FS triangle inequality", worst_tri <= 1e-9,
              "max violation " + format17(worst_tri) + " over 1e4 triples");

    std::uniform_real_distribution<double> uphi(0.0, 0.5 * std::numbers::pi);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * std::numbers::pi);
    double worst_det = 0.0;
    int det_checked = 0;
    while (det_checked < 1000) {
        const int D = 1 + det_checked % 3;
        SphericalChart chart;
        for (int d = 0; d < D; ++d) {
            chart.theta.push_back(uth(rng));
            chart.phi.push_back(uphi(rng));
        }
        const double det = metric_at(chart).determinant();
        const double vol2 = volume_density(chart) * volume_density(chart);
        // skip the degenerate chart boundary, where the relative comparison
        // is conditioning-limited (both sides cancel to zero)
        if (vol2 < 1e-4) continue;
        worst_det = std::max(worst_det, std::abs(det / vol2 - 1.0));
        ++det_checked;
    }
    table.row("det(metric) = volume^2", worst_det <= 1e-9,
              "max rel err " + format17(worst_det) + " over 1e3 charts");

    double worst_twist = 0.0;
    for (int c = 0; c < 20; ++c) {
        const int n = 2 + c % 2;
        std::vector<ProjectivePoint> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_point(1));
        const cplx closed = twist_expectation(pts, 2);
        const cplx brute = twist_expectation_brute(pts, 2);
        worst_twist = std::max(worst_twist, std::abs(closed - brute));
    }
    table.row("twist closed form vs elementary", worst_twist <= 1e-12,
              "max abs err " + format17(worst_twist));
}

} // namespace

int run_verify(const std::string& suite, int verbosity) {
    (void)verbosity;
    VerifyTable table;
    bool known = false;
    try {
        if (suite == "detA" || suite == "all") {
            verify_detA(table);
            known = true;
        }
        if (suite == "oracles" || suite == "all") {
            verify_oracles(table);
            known = true;
        }
        if (suite == "reconstruction" || suite == "all") {
            verify_reconstruction(table);
            known = true;
        }
        if (suite == "recursion" || suite == "all") {
            verify_recursion(table);
            known = true;
        }
        if (suite == "geometry" || suite == "all") {
            verify_geometry(table);
            known = true;
        }
    } catch (const std::exception& e) {
        std::cerr << "verify error: " << e.what() << "\n";
        return exit_numerical;
    }
    if (!known) {
        std::cerr << "unknown verify suite '" << suite
                  << "' (expected detA, oracles, reconstruction, recursion, geometry, all)\n";
        return exit_config;
    }
    return table.failures == 0 ? exit_ok : exit_failure;
}

} // namespace spinent
