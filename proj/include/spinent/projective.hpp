#ifndef SPINENT_PROJECTIVE_HPP
#define SPINENT_PROJECTIVE_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinent/complex_log.hpp"

namespace spinent {

/// A point of CP^D in canonical-gauge homogeneous coordinates: D+1 complex
/// amplitudes of unit norm, with the phase fixed so that the first component
/// of largest modulus is real and >= 0.
class ProjectivePoint {
public:
    /// Gauge-fix and normalize a raw amplitude vector. Any two nonzero
    /// complex-scalar multiples of the same input produce the same point.
    /// Throws std::invalid_argument on all-zero input or D < 1.
    static ProjectivePoint canonicalize(std::span<const cplx> raw);
    static ProjectivePoint canonicalize(std::initializer_list<cplx> raw);

    int dim_d() const { return static_cast<int>(comps_.size()) - 1; }
    const std::vector<cplx>& components() const { return comps_; }
    const cplx& operator[](std::size_t j) const { return comps_[j]; }

    bool operator==(const ProjectivePoint&) const = default;

private:
    explicit ProjectivePoint(std::vector<cplx> comps) : comps_(std::move(comps)) {}
    std::vector<cplx> comps_;
};

/// Spherical-chart coordinates on CP^D: D torus angles theta_j in [0, 2pi)
/// (theta_D is fixed to zero) and D polar angles phi_j in [0, pi/2].
struct SphericalChart {
    std::vector<double> theta;
    std::vector<double> phi;

    int dim_d() const { return static_cast<int>(phi.size()); }
    /// Throws std::invalid_argument if sizes mismatch or angles leave their ranges.
    void check() const;
};

/// Hermitian inner product v^dag . w. Throws on dimension mismatch.
cplx overlap(const ProjectivePoint& v, const ProjectivePoint& w);

/// Fubini-Study distance 2*arccos|v^dag w|, in [0, pi].
double fs_distance(const ProjectivePoint& v, const ProjectivePoint& w);

/// Amplitudes a_j of the spherical parametrization:
/// a_0 = cos phi_0, a_i = cos phi_i * prod_{k<i} sin phi_k, a_D = prod_k sin phi_k.
std::vector<double> chart_amplitudes(const SphericalChart& chart);

/// The point with components a_j(phi) e^{i theta_j}, canonicalized.
ProjectivePoint chart_to_point(const SphericalChart& chart);

/// Jacobian density of the Fubini-Study volume element with respect to
/// d^D theta d^D phi:  2^D prod_p sin(2 phi_p) * prod_k prod_{p<k} sin^2 phi_p.
double volume_density(const SphericalChart& chart);

/// Fubini-Study metric in chart coordinates, ordered (theta_0..theta_{D-1},
/// phi_0..phi_{D-1}):
///   g_{theta_k theta_j} = -4 (a_k^2 a_j^2 - a_k^2 delta_kj)
///   g_{phi_k phi_j}     =  4 delta_kj prod_{p<k} sin^2 phi_p
/// with vanishing theta-phi blocks. det(g) equals volume_density^2.
Eigen::MatrixXd metric_at(const SphericalChart& chart);

/// m * sum_alpha log(v_alpha^dag v_{alpha+1}) over the cyclic chain
/// (v_{n+1} = v_1), as log-modulus plus accumulated phase. Log-modulus is
/// -inf if any consecutive overlap vanishes exactly.
LogComplex log_chain_product(std::span<const ProjectivePoint> points, double m);

} // namespace spinent

#endif
