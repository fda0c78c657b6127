#include "spinent/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "spinent/asymptotics.hpp"
#include "spinent/errors.hpp"
#include "spinent/kernels.hpp"
#include "spinent/oracles.hpp"

namespace spinent {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void require_int_n(double n, const char* who) {
    if (!(n >= 2.0) || n != std::floor(n))
        throw std::invalid_argument(std::string(who) + ": engine needs integer n >= 2");
}

DickeOccupation occupation_from_ratios(const TorusMeasure& p, long long N) {
    DickeOccupation occ;
    occ.counts.resize(p.p.size());
    long long assigned = 0;
    std::vector<std::pair<double, std::size_t>> rem;
    for (std::size_t j = 0; j < p.p.size(); ++j) {
        const double exact = p.p[j] * static_cast<double>(N);
        occ.counts[j] = static_cast<long long>(std::floor(exact));
        assigned += occ.counts[j];
        rem.emplace_back(exact - std::floor(exact), j);
    }
    std::sort(rem.begin(), rem.end(), std::greater<>());
    for (long long i = 0; i < N - assigned; ++i) ++occ.counts[rem[static_cast<std::size_t>(i)].second];
    return occ;
}

} // namespace

std::string engine_name(EngineKind kind) {
    switch (kind) {
        case EngineKind::discrete_transfer: return "discrete-transfer";
        case EngineKind::dicke_exact: return "dicke-exact";
        case EngineKind::torus_quadrature: return "torus-quadrature";
        case EngineKind::monte_carlo: return "monte-carlo";
        case EngineKind::asymptotic: return "asymptotic";
        case EngineKind::ifs_transfer: return "ifs-transfer";
        case EngineKind::ifs_gaussian: return "ifs-gaussian";
    }
    return "unknown";
}

EntropyCurve entropy_curve(const SpinMeasure& measure, double n, std::span<const long> m_grid,
                           const EngineSpec& engine) {
    if (m_grid.empty()) throw std::invalid_argument("entropy_curve: empty m grid");
    for (std::size_t i = 1; i < m_grid.size(); ++i)
        if (m_grid[i] <= m_grid[i - 1])
            throw std::invalid_argument("entropy_curve: m grid must be strictly increasing");

    EntropyCurve curve;
    curve.n = n;
    curve.engine_tag = engine_name(engine.kind);
    curve.measure_hash = fnv1a(describe(measure));
    curve.points.reserve(m_grid.size());

    switch (engine.kind) {
        case EngineKind::discrete_transfer: {
            const auto* dm = std::get_if<DiscreteMeasure>(&measure);
            if (!dm) throw std::invalid_argument("entropy_curve: discrete-transfer needs a discrete measure");
            require_int_n(n, "entropy_curve");
            for (long m : m_grid) {
                const MomentEstimate est = moment_discrete(*dm, {n, m}, engine.budget);
                curve.points.push_back({m, renyi_from_moment(est, n).value, 0.0});
            }
            break;
        }
        case EngineKind::dicke_exact: {
            const auto* tm = std::get_if<TorusMeasure>(&measure);
            if (!tm) throw std::invalid_argument("entropy_curve: dicke-exact needs a torus measure");
            const DickeOccupation occ = occupation_from_ratios(*tm, engine.dicke_sites);
            for (long m : m_grid)
                curve.points.push_back({m, dicke_renyi(occ, m, n), 0.0});
            break;
        }
        case EngineKind::torus_quadrature: {
            const auto* tm = std::get_if<TorusMeasure>(&measure);
            if (!tm) throw std::invalid_argument("entropy_curve: quadrature needs a torus measure");
            require_int_n(n, "entropy_curve");
            for (long m : m_grid) {
                const MomentEstimate est =
                    moment_torus_quadrature(*tm, {n, m}, engine.grid_points, engine.budget);
                curve.points.push_back({m, renyi_from_moment(est, n).value, 0.0});
            }
            break;
        }
        case EngineKind::monte_carlo: {
            require_int_n(n, "entropy_curve");
            for (long m : m_grid) {
                const std::uint64_t seed_m =
                    kernels::derive_stream_seed(engine.seed, static_cast<std::uint64_t>(m));
                const MomentEstimate est = moment_mc(measure, {n, m}, engine.mc_samples, seed_m);
                const Entropy s = renyi_from_moment(est, n);
                curve.points.push_back({m, s.value, s.std_error});
            }
            break;
        }
        case EngineKind::asymptotic: {
            if (const auto* tm = std::get_if<TorusMeasure>(&measure)) {
                for (long m : m_grid)
                    curve.points.push_back(
                        {m, torus_renyi_asymptotic(*tm, n, static_cast<double>(m)), 0.0});
            } else if (const auto* dm = std::get_if<DensityMeasure>(&measure)) {
                for (long m : m_grid)
                    curve.points.push_back(
                        {m, fullspace_renyi_asymptotic(*dm, n, static_cast<double>(m)).value, 0.0});
            } else if (const auto* disc = std::get_if<DiscreteMeasure>(&measure)) {
                const double sat = saturation_value(*disc, n);
                for (long m : m_grid) curve.points.push_back({m, sat, 0.0});
            } else {
                const double d = support_dimension(measure);
                for (long m : m_grid)
                    curve.points.push_back(
                        {m, generic_scaling(d, n, static_cast<double>(m), measure_dim_d(measure)),
                         0.0});
            }
            break;
        }
        case EngineKind::ifs_transfer:
        case EngineKind::ifs_gaussian: {
            const auto* im = std::get_if<IfsMeasure>(&measure);
            if (!im) throw std::invalid_argument("entropy_curve: ifs engine needs an IFS measure");
            require_int_n(n, "entropy_curve");
            const QmKernel kernel = engine.kind == EngineKind::ifs_transfer
                                        ? QmKernel::exact_overlap
                                        : QmKernel::gaussian;
            QmOptions opt;
            opt.trunc_bound = engine.trunc_bound;
            opt.budget = engine.budget;
            for (long m : m_grid) {
                const double q = cantor_qm(*im, engine.ifs_level, static_cast<int>(n),
                                           static_cast<double>(m), kernel, opt);
                curve.points.push_back({m, std::log(q) / (1.0 - n), 0.0});
            }
            break;
        }
    }
    return curve;
}

ScalingFit fit_log_slope(const EntropyCurve& curve, double window_lo, double window_hi) {
    std::vector<const CurvePoint*> sel;
    for (const CurvePoint& pt : curve.points)
        if (pt.m >= window_lo && pt.m <= window_hi) sel.push_back(&pt);
    if (sel.size() < 3)
        throw std::invalid_argument("fit_log_slope: degenerate window (need >= 3 points)");

    bool all_exact = true;
    double min_pos = 0.0;
    for (const CurvePoint* pt : sel)
        if (pt->std_error > 0.0) {
            all_exact = false;
            min_pos = min_pos == 0.0 ? pt->std_error : std::min(min_pos, pt->std_error);
        }

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const CurvePoint* pt : sel) {
        const double x = std::log(static_cast<double>(pt->m));
        const double sigma = all_exact ? 1.0 : std::max(pt->std_error, 1e-3 * min_pos);
        const double w = all_exact ? 1.0 : 1.0 / (sigma * sigma);
        sw += w;
        sx += w * x;
        sy += w * pt->entropy;
        sxx += w * x * x;
        sxy += w * x * pt->entropy;
    }
    const double denom = sw * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0))
        throw std::invalid_argument("fit_log_slope: degenerate window (no log-m spread)");

    ScalingFit fit;
    fit.slope = (sw * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / sw;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    fit.dimension_estimate = 2.0 * fit.slope;
    double rss = 0.0;
    for (const CurvePoint* pt : sel) {
        const double x = std::log(static_cast<double>(pt->m));
        const double sigma = all_exact ? 1.0 : std::max(pt->std_error, 1e-3 * min_pos);
        const double w = all_exact ? 1.0 : 1.0 / (sigma * sigma);
        const double r = pt->entropy - (fit.slope * x + fit.intercept);
        rss += w * r * r;
    }
    fit.residual_rms = std::sqrt(rss / sw);
    return fit;
}

namespace {

double gaussian_dense_trace(std::span<const double> xs, double coef_link, int n,
                            const EngineBudget& budget) {
    if (static_cast<double>(xs.size()) > budget.max_transfer_atoms_dense)
        throw budget_error("cantor_qm: atom count exceeds dense budget for n >= 4");
    const auto V = static_cast<Eigen::Index>(xs.size());
    const double w = 1.0 / static_cast<double>(V);
    Eigen::MatrixXd K(V, V);
    for (Eigen::Index i = 0; i < V; ++i)
        for (Eigen::Index j = 0; j < V; ++j) {
            const double d = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
            K(i, j) = w * std::exp(-coef_link * d * d);
        }
    Eigen::MatrixXd P = K;
    for (int k = 1; k < n; ++k) P = (P * K).eval();
    return P.trace();
}

} // namespace

double cantor_qm(const IfsMeasure& measure, int level, int n, double m, QmKernel kernel,
                 const QmOptions& opt, double* dropped_mass_bound) {
    if (n < 2) throw std::invalid_argument("cantor_qm: n >= 2");
    if (dropped_mass_bound) *dropped_mass_bound = 0.0;
    if (kernel == QmKernel::exact_overlap) {
        const DiscreteMeasure atoms = atoms_at_level(measure, level, opt.atom_cap);
        return discrete_moment_value(atoms, n, m, opt.budget);
    }
    const std::vector<double> xs = ifs_parameters_at_level(measure, level, opt.atom_cap);
    const double coef_link = std::numbers::pi * std::numbers::pi * m / 8.0;
    if (n == 2)
        return kernels::gaussian_pair_sum_omp(xs, 2.0 * coef_link, opt.trunc_bound,
                                              dropped_mass_bound);
    if (n == 3)
        return kernels::gaussian_triple_sum_omp(xs, coef_link, opt.trunc_bound,
                                                dropped_mass_bound);
    return gaussian_dense_trace(xs, coef_link, n, opt.budget);
}

ScaleWindow ifs_valid_window(const IfsMeasure& measure, int level, double c1, double c2) {
    const double base = 1.0 / (measure.ratio * measure.ratio);
    return {c1 * base, c2 * std::pow(base, level - 1)};
}

RecursionReport verify_cantor_recursion(const IfsMeasure& measure, int level, int n,
                                        std::span<const double> ms, QmKernel kernel,
                                        const QmOptions& opt) {
    const double r2 = measure.ratio * measure.ratio;
    const ScaleWindow window = ifs_valid_window(measure, level);
    RecursionReport rep;
    rep.expected_ratio =
        std::pow(static_cast<double>(measure.branches()), -(static_cast<double>(n) - 1.0));
    for (double m : ms) {
        if (!window.contains(m) || !window.contains(m * r2))
            throw std::domain_error("verify_cantor_recursion: m outside the level's scale window");
        RecursionRow row;
        row.m = m;
        row.q_m = cantor_qm(measure, level, n, m, kernel, opt);
        row.q_scaled = cantor_qm(measure, level, n, m * r2, kernel, opt);
        row.ratio = row.q_m / row.q_scaled;
        row.deviation = std::abs(row.ratio / rep.expected_ratio - 1.0);
        rep.max_deviation = std::max(rep.max_deviation, row.deviation);
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace spinent
