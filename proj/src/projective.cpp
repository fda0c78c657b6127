#include "spinent/projective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinent {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double half_pi = 0.5 * std::numbers::pi;
} // namespace

ProjectivePoint ProjectivePoint::canonicalize(std::span<const cplx> raw) {
    if (raw.size() < 2)
        throw std::invalid_argument("ProjectivePoint: need D+1 >= 2 components");

    std::size_t ref = 0;
    double best = 0.0;
    double norm2 = 0.0;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        double a2 = std::norm(raw[j]);
        norm2 += a2;
        if (a2 > best) {
            best = a2;
            ref = j;
        }
    }
    if (best == 0.0)
        throw std::invalid_argument("ProjectivePoint: all-zero input");

    // Remove the phase of the reference component, then normalize.
    const double inv_norm = 1.0 / std::sqrt(norm2);
    const cplx u = std::conj(raw[ref]) / std::abs(raw[ref]);
    std::vector<cplx> comps(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) comps[j] = raw[j] * u * inv_norm;
    comps[ref] = cplx(std::abs(comps[ref]), 0.0);
    return ProjectivePoint(std::move(comps));
}

ProjectivePoint ProjectivePoint::canonicalize(std::initializer_list<cplx> raw) {
    return canonicalize(std::span<const cplx>(raw.begin(), raw.size()));
}

void SphericalChart::check() const {
    if (theta.size() != phi.size() || phi.empty())
        throw std::invalid_argument("SphericalChart: need D >= 1 theta and phi angles");
    for (double t : theta)
        if (!(t >= 0.0 && t < two_pi))
            throw std::invalid_argument("SphericalChart: theta out of [0, 2pi)");
    for (double f : phi)
        if (!(f >= 0.0 && f <= half_pi))
            throw std::invalid_argument("SphericalChart: phi out of [0, pi/2]");
}

cplx overlap(const ProjectivePoint& v, const ProjectivePoint& w) {
    if (v.dim_d() != w.dim_d())
        throw std::invalid_argument("overlap: dimension mismatch");
    cplx s(0.0, 0.0);
    for (int j = 0; j <= v.dim_d(); ++j) s += std::conj(v[j]) * w[j];
    return s;
}

double fs_distance(const ProjectivePoint& v, const ProjectivePoint& w) {
    if (v == w) return 0.0; // arccos near 1 cannot resolve below ~1e-8
    double a = std::abs(overlap(v, w));
    if (a > 1.0) a = 1.0;
    return 2.0 * std::acos(a);
}

std::vector<double> chart_amplitudes(const SphericalChart& chart) {
    chart.check();
    const int D = chart.dim_d();
    std::vector<double> a(D + 1);
    double sins = 1.0; // prod_{k<i} sin phi_k
    for (int i = 0; i < D; ++i) {
        a[i] = std::cos(chart.phi[i]) * sins;
        sins *= std::sin(chart.phi[i]);
    }
    a[D] = sins;
    return a;
}

ProjectivePoint chart_to_point(const SphericalChart& chart) {
    const std::vector<double> a = chart_amplitudes(chart);
    const int D = chart.dim_d();
    std::vector<cplx> comps(D + 1);
    for (int j = 0; j < D; ++j) comps[j] = std::polar(a[j], chart.theta[j]);
    comps[D] = cplx(a[D], 0.0); // theta_D == 0
    return ProjectivePoint::canonicalize(comps);
}

double volume_density(const SphericalChart& chart) {
    chart.check();
    const int D = chart.dim_d();
    double v = 1.0;
    double sins2 = 1.0; // prod_{p<k} sin^2 phi_p
    for (int k = 0; k < D; ++k) {
        v *= 2.0 * std::sin(2.0 * chart.phi[k]) * sins2;
        double s = std::sin(chart.phi[k]);
        sins2 *= s * s;
    }
    return v;
}

Eigen::MatrixXd metric_at(const SphericalChart& chart) {
    const std::vector<double> a = chart_amplitudes(chart);
    const int D = chart.dim_d();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * D, 2 * D);
    for (int k = 0; k < D; ++k) {
        const double ak2 = a[k] * a[k];
        for (int j = 0; j < D; ++j) {
            const double aj2 = a[j] * a[j];
            g(k, j) = -4.0 * (ak2 * aj2 - ak2 * (k == j ? 1.0 : 0.0));
        }
    }
    double sins2 = 1.0;
    for (int k = 0; k < D; ++k) {
        g(D + k, D + k) = 4.0 * sins2;
        double s = std::sin(chart.phi[k]);
        sins2 *= s * s;
    }
    return g;
}

LogComplex log_chain_product(std::span<const ProjectivePoint> points, double m) {
    if (points.size() < 2)
        throw std::invalid_argument("log_chain_product: need n >= 2 points");
    LogComplex acc{0.0, 0.0};
    for (std::size_t alpha = 0; alpha < points.size(); ++alpha) {
        const ProjectivePoint& next = points[(alpha + 1) % points.size()];
        acc *= LogComplex::from(overlap(points[alpha], next));
        if (acc.is_zero()) return LogComplex::zero();
    }
    return acc.pow(m);
}

} // namespace spinent
