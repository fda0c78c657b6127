#ifndef SPINENT_SCALING_HPP
#define SPINENT_SCALING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinent/moment.hpp"

namespace spinent {

struct CurvePoint {
    long m = 0;
    double entropy = 0.0;
    double std_error = 0.0;
};

struct EntropyCurve {
    std::vector<CurvePoint> points; // m strictly increasing
    double n = 2.0;
    std::string engine_tag;
    std::uint64_t measure_hash = 0;
};

/// Weighted least-squares fit of S against log m over a window.
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double dimension_estimate = 0.0; // 2 * slope
};

enum class EngineKind {
    discrete_transfer,
    dicke_exact,
    torus_quadrature,
    monte_carlo,
    asymptotic,
    ifs_transfer,
    ifs_gaussian,
};

std::string engine_name(EngineKind kind);

struct EngineSpec {
    EngineKind kind = EngineKind::discrete_transfer;
    long long dicke_sites = 1000000000; // N for the finite-N Dicke engine
    int ifs_level = 12;
    long grid_points = 4096;
    long long mc_samples = 100000;
    std::uint64_t seed = 1;
    double trunc_bound = 46.0; // gaussian-kernel truncation exponent
    EngineBudget budget;
};

/// One entropy value per grid block size, with propagated errors.
/// Throws std::invalid_argument on an engine/measure mismatch.
EntropyCurve entropy_curve(const SpinMeasure& measure, double n, std::span<const long> m_grid,
                           const EngineSpec& engine);

/// Fit over grid points with window_lo <= m <= window_hi (needs >= 3 points).
ScalingFit fit_log_slope(const EntropyCurve& curve, double window_lo, double window_hi);

enum class QmKernel { gaussian, exact_overlap };

struct QmOptions {
    double trunc_bound = 46.0;
    std::size_t atom_cap = 1u << 20;
    EngineBudget budget;
};

/// The n-copy chain sum Q_m over the level-k atom set of an IFS measure.
/// gaussian mode uses the quadratic kernel exp(-pi^2 m / 8 |x-y|^2) on line
/// parameters (terms beyond the truncation bound dropped); exact_overlap mode
/// uses the true embedded overlaps. m may be real.
double cantor_qm(const IfsMeasure& measure, int level, int n, double m, QmKernel kernel,
                 const QmOptions& opt = {}, double* dropped_mass_bound = nullptr);

/// Block-size window in which a level-k atom set is a faithful stand-in for
/// the (k -> infinity) fractal: kernel width between the finest resolved gap
/// and the overall diameter scale. base = 1/ratio^2 (9 for the Cantor set).
struct ScaleWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double m) const { return m >= lo && m <= hi; }
};
ScaleWindow ifs_valid_window(const IfsMeasure& measure, int level, double c1 = 10.0,
                             double c2 = 0.1);

/// Per-m comparison of Q_m / Q_{m r^2} against the self-similarity prediction
/// (#branches)^{-(n-1)}.
struct RecursionRow {
    double m = 0.0;
    double q_m = 0.0;
    double q_scaled = 0.0; // Q at m r^2
    double ratio = 0.0;
    double deviation = 0.0; // |ratio / expected - 1|
};
struct RecursionReport {
    std::vector<RecursionRow> rows;
    double expected_ratio = 0.0;
    double max_deviation = 0.0;
};
RecursionReport verify_cantor_recursion(const IfsMeasure& measure, int level, int n,
                                        std::span<const double> ms, QmKernel kernel,
                                        const QmOptions& opt = {});

} // namespace spinent

#endif
