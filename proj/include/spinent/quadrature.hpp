#ifndef SPINENT_QUADRATURE_HPP
#define SPINENT_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "spinent/projective.hpp"

namespace spinent {

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int order, double a, double b);

struct QuadratureResult {
    double value = 0.0;
    double residual = 0.0; // |change on the last order doubling|
    int order = 0;         // order at which the result was accepted
};

/// Integral of g(chart) * dtheta^D dphi^D over the full chart domain
/// [0,2pi)^D x [0,pi/2]^D, by tensor Gauss-Legendre in phi and the
/// trapezoid rule (exact for trigonometric polynomials) in theta.
/// The order is doubled until the value changes by less than tol.
QuadratureResult chart_integrate(int D, const std::function<double(const SphericalChart&)>& g,
                                 double tol = 1e-8, int start_order = 16, int max_order = 256);

/// Integral of f against the Fubini-Study volume element d^{2D}v, i.e.
/// chart_integrate of f(chart) * volume_density(chart).
QuadratureResult cp_integrate(int D, const std::function<double(const SphericalChart&)>& f,
                              double tol = 1e-8, int start_order = 16, int max_order = 256);

} // namespace spinent

#endif
