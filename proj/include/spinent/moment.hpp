#ifndef SPINENT_MOMENT_HPP
#define SPINENT_MOMENT_HPP

#include <cstdint>

#include "spinent/measures.hpp"

namespace spinent {

/// Renyi index n and block size m of the n-copy moment integral.
struct RenyiQuery {
    double n = 2.0;
    long m = 1;
};

enum class MomentMethod { exact_transfer, quadrature, monte_carlo };

/// The bracketed n-copy moment in log form; std_error is on the moment itself
/// (linear domain) and zero for exact methods.
struct MomentEstimate {
    double log_moment = 0.0;
    double std_error = 0.0;
    MomentMethod method = MomentMethod::exact_transfer;
    long long samples_used = 0;
};

struct EngineBudget {
    double max_transfer_atoms_dense = 2048; // |V| cap for dense T^n, n >= 3
    double max_grid_evaluations = 6.8e7;    // G^((n-1)D) cap for the torus grid
    double log_floor = -700.0;              // transfer entries below this are flushed
};

/// Exact n-copy moment of a discrete measure as trace(T^n) with
/// T_{vw} = w_w (v^dag w)^m, evaluated in log domain. Integer n >= 2.
MomentEstimate moment_discrete(const DiscreteMeasure& measure, const RenyiQuery& q,
                               const EngineBudget& budget = {});

/// Linear-domain trace(T^n) value; m may be real (the fractal Q_m checks
/// evaluate the same trace at scaled block sizes m/9).
double discrete_moment_value(const DiscreteMeasure& measure, int n, double m,
                             const EngineBudget& budget = {});

/// m -> infinity limit of S_n for a discrete measure:
/// (1/(1-n)) log sum w^n; at n = 1 the von Neumann limit -sum w log w.
double saturation_value(const DiscreteMeasure& measure, double n);

/// Single-copy limit -log(max weight).
double single_copy_discrete(const DiscreteMeasure& measure);

/// Trapezoid-rule moment on the reduced torus ((n-1)*D angle dimensions,
/// grid_points per dimension). Deterministic; spectrally convergent.
MomentEstimate moment_torus_quadrature(const TorusMeasure& measure, const RenyiQuery& q,
                                       long grid_points, const EngineBudget& budget = {});

/// Plain Monte Carlo moment: average over num_samples draws of the real part
/// of the cyclic replica product, with n independent mu-samples per draw.
/// Bit-reproducible for a fixed seed regardless of thread count.
MomentEstimate moment_mc(const SpinMeasure& measure, const RenyiQuery& q,
                         long long num_samples, std::uint64_t seed);

struct Entropy {
    double value = 0.0;
    double std_error = 0.0;
};

/// S_n = log_moment / (1 - n) with the moment error propagated through the log.
Entropy renyi_from_moment(const MomentEstimate& est, double n);

} // namespace spinent

#endif
