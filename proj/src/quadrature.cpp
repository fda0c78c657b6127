#include "spinent/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinent {

GaussRule gauss_legendre(int order, double a, double b) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order >= 1");
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    // Newton iteration on Legendre roots, standard symmetric construction.
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
        rule.nodes[order - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
        rule.weights[i] = rule.weights[order - 1 - i] = 0.5 * (b - a) * w;
    }
    return rule;
}

namespace {

double chart_integral_at_order(int D, const std::function<double(const SphericalChart&)>& g,
                               int order) {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const GaussRule phi_rule = gauss_legendre(order, 0.0, half_pi);
    const int nt = order; // trapezoid points per theta dimension
    const double wt = two_pi / nt;

    // Odometer over D phi indices and D theta indices.
    std::vector<int> ip(D, 0), it(D, 0);
    SphericalChart chart;
    chart.theta.assign(D, 0.0);
    chart.phi.assign(D, 0.0);
    double total = 0.0;
    for (;;) {
        double wphi = 1.0;
        for (int d = 0; d < D; ++d) {
            chart.phi[d] = phi_rule.nodes[ip[d]];
            wphi *= phi_rule.weights[ip[d]];
        }
        for (;;) {
            for (int d = 0; d < D; ++d) chart.theta[d] = wt * it[d];
            total += wphi * g(chart);
            int d = 0;
            while (d < D && ++it[d] == nt) it[d++] = 0;
            if (d == D) break;
        }
        int d = 0;
        while (d < D && ++ip[d] == order) ip[d++] = 0;
        if (d == D) break;
    }
    double wtheta = 1.0;
    for (int d = 0; d < D; ++d) wtheta *= wt;
    return total * wtheta;
}

} // namespace

QuadratureResult chart_integrate(int D, const std::function<double(const SphericalChart&)>& g,
                                 double tol, int start_order, int max_order) {
    if (D < 1) throw std::invalid_argument("chart_integrate: D >= 1");
    QuadratureResult res;
    res.value = chart_integral_at_order(D, g, start_order);
    res.residual = std::abs(res.value); // unknown until the first doubling
    res.order = start_order;
    for (int order = 2 * start_order; order <= max_order; order *= 2) {
        if (std::pow(static_cast<double>(order), 2.0 * D) > 4e7) break;
        double cur = chart_integral_at_order(D, g, order);
        res.residual = std::abs(cur - res.value);
        res.value = cur;
        res.order = order;
        if (res.residual < tol) return res;
    }
    return res;
}

QuadratureResult cp_integrate(int D, const std::function<double(const SphericalChart&)>& f,
                              double tol, int start_order, int max_order) {
    return chart_integrate(
        D, [&f](const SphericalChart& c) { return f(c) * volume_density(c); }, tol,
        start_order, max_order);
}

} // namespace spinent
