#ifndef SPINENT_KERNELS_HPP
#define SPINENT_KERNELS_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "spinent/complex_log.hpp"

namespace spinent::kernels {

/// Flat view of a discrete measure's atoms: `count` rows of `dim+1` complex
/// amplitudes plus one weight per row.
struct AtomsView {
    const cplx* components = nullptr;
    const double* weights = nullptr;
    std::size_t count = 0;
    int dim = 1;

    const cplx* row(std::size_t i) const {
        return components + i * static_cast<std::size_t>(dim + 1);
    }
};

/// n=2 transfer-matrix trace: sum_{v,w} w_v w_w exp(2m log|<v,w>|).
/// Entries with 2m log|<v,w>| below log_floor are flushed to zero.
/// m may be real (used by the fractal Q_m evaluations).
double discrete_pair_sum_serial(const AtomsView& atoms, double m, double log_floor);
double discrete_pair_sum_omp(const AtomsView& atoms, double m, double log_floor);

/// Gaussian-kernel n=2 chain sum on line parameters:
/// sum_{x,y} w^2 exp(-coef (x-y)^2), with terms dropped once
/// coef (x-y)^2 > trunc_bound. xs must be sorted ascending; w = 1/|xs|.
/// *dropped_mass_bound, if given, receives an upper bound on the dropped mass.
double gaussian_pair_sum_serial(std::span<const double> xs, double coef,
                                double trunc_bound, double* dropped_mass_bound);
double gaussian_pair_sum_omp(std::span<const double> xs, double coef,
                             double trunc_bound, double* dropped_mass_bound);

/// Gaussian-kernel n=3 chain sum:
/// sum_{x,y,z} w^3 exp(-coef [(x-y)^2 + (y-z)^2 + (z-x)^2]), truncated per link.
double gaussian_triple_sum_serial(std::span<const double> xs, double coef,
                                  double trunc_bound, double* dropped_mass_bound);
double gaussian_triple_sum_omp(std::span<const double> xs, double coef,
                               double trunc_bound, double* dropped_mass_bound);

/// Trapezoid-rule value of the reduced-torus replica integral:
/// mean over the (n-1)*D grid of Re prod_alpha (v(th^a)^dag v(th^{a+1}))^m,
/// with theta^1 = 0 and G points per dimension.
double torus_grid_mean_serial(std::span<const double> p, int n, double m, long grid_points);
double torus_grid_mean_omp(std::span<const double> p, int n, double m, long grid_points);

/// Plain Monte Carlo accumulation of a chain-product estimator. Draws are
/// organized in fixed-size chunks; chunk c uses an independent RNG substream
/// derived from (seed, c), and chunk partials are combined in index order, so
/// the result is bit-identical for any thread count (and to the serial path).
struct McAccumulation {
    double sum = 0.0;
    double sum_sq = 0.0;
    long long count = 0;
};
using McDraw = std::function<double(std::mt19937_64&)>;
McAccumulation mc_accumulate_serial(const McDraw& draw, long long num_samples, std::uint64_t seed);
McAccumulation mc_accumulate_omp(const McDraw& draw, long long num_samples, std::uint64_t seed);

/// Windowed accumulation over a Dicke block spectrum. The eigenvalue of a
/// pattern (k_0..k_D) is exp(const_term + sum_j table_j[k_j - lo_j]); the
/// kernel enumerates patterns with sum k_j = m, each k_j in [lo_j, hi_j], and
/// returns sum lambda, sum lambda log lambda, max log lambda, and
/// sum lambda^n for each requested exponent.
struct DickeWindow {
    std::vector<long long> lo, hi;            // per species, size D+1
    std::vector<std::vector<double>> tables;  // log-gamma sums per species
    double const_term = 0.0;
    long long m = 0;
};
struct DickeSums {
    double sum1 = 0.0;
    double sum_llog = 0.0;
    double max_log = 0.0;
    std::vector<double> sum_pow;
    long long entries = 0;
};
DickeSums dicke_window_sums_serial(const DickeWindow& win, std::span<const double> exponents);
DickeSums dicke_window_sums_omp(const DickeWindow& win, std::span<const double> exponents);

/// RNG substream seed derivation (splitmix64 over seed ^ f(stream)).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace spinent::kernels

#endif
