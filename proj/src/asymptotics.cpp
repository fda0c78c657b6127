#include "spinent/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "spinent/errors.hpp"
#include "spinent/quadrature.hpp"

namespace spinent {

namespace {
constexpr double pi = std::numbers::pi;

void require_positive_p(const TorusMeasure& p, const char* who) {
    if (p.has_zero_component())
        throw std::domain_error(std::string(who) +
                                ": vanishing p_j is singular; use TorusMeasure::reduced()");
}

double log_prod_p(const TorusMeasure& p) {
    double s = 0.0;
    for (double x : p.p) s += std::log(x);
    return s;
}
} // namespace

AsymptoticPrediction torus_renyi_prediction(const TorusMeasure& p, double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("torus_renyi_prediction: n >= 1");
    require_positive_p(p, "torus_renyi_prediction");
    const double s = 0.5 * p.dim_d();
    AsymptoticPrediction pred;
    pred.leading_coeff = s;
    pred.n = n;
    if (n == 1.0) {
        pred.log_argument_scale = 2.0 * pi * std::numbers::e;
        pred.constant_term = 0.5 * log_prod_p(p);
        pred.formula_tag = "vn3";
    } else if (std::isinf(n)) {
        pred.log_argument_scale = 2.0 * pi;
        pred.constant_term = 0.5 * log_prod_p(p);
        pred.formula_tag = "single_copy";
    } else {
        pred.log_argument_scale = 2.0 * pi;
        pred.constant_term = s * std::log(n) / (n - 1.0) + 0.5 * log_prod_p(p);
        pred.formula_tag = "renyi2";
    }
    return pred;
}

double torus_renyi_asymptotic(const TorusMeasure& p, double n, double m) {
    return torus_renyi_prediction(p, n).at(m);
}

double detA_closed(const TorusMeasure& p, int n) {
    if (n < 2) throw std::invalid_argument("detA_closed: n >= 2");
    require_positive_p(p, "detA_closed");
    const int D = p.dim_d();
    double prod = 1.0;
    for (int j = 0; j < D; ++j) prod *= p.p[static_cast<std::size_t>(j)];
    return std::pow(static_cast<double>(n), D) *
           std::pow(p.p[static_cast<std::size_t>(D)] / prod, n - 1);
}

double detA_numeric(const TorusMeasure& p, int n) {
    if (n < 2) throw std::invalid_argument("detA_numeric: n >= 2");
    require_positive_p(p, "detA_numeric");
    const int D = p.dim_d();
    const int M = D * (n - 1);
    if (M > 64) throw budget_error("detA_numeric: D(n-1) <= 64");

    Eigen::MatrixXd B(D, D);
    for (int k = 0; k < D; ++k)
        for (int j = 0; j < D; ++j)
            B(k, j) = k == j ? (1.0 - p.p[static_cast<std::size_t>(k)]) / p.p[static_cast<std::size_t>(k)]
                             : -1.0;

    // Cycle Laplacian on n nodes (edge (a, a+1 mod n)), with node 0 eliminated.
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        const int b = (a + 1) % n;
        L(a, a) += 1.0;
        L(b, b) += 1.0;
        L(a, b) -= 1.0;
        L(b, a) -= 1.0;
    }
    const Eigen::MatrixXd Lp = L.bottomRightCorner(n - 1, n - 1);

    Eigen::MatrixXd A(M, M);
    for (int r = 0; r < n - 1; ++r)
        for (int c = 0; c < n - 1; ++c)
            A.block(r * D, c * D, D, D) = Lp(r, c) * B;

    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw numerical_error("detA_numeric: quadratic form not positive definite");
    const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
    double logdet = 0.0;
    for (int i = 0; i < M; ++i) logdet += 2.0 * std::log(diag(i));
    return std::exp(logdet);
}

GeometricEntropy geometric_entropy(const DensityMeasure& f) {
    if (!f.density) throw std::invalid_argument("geometric_entropy: missing density");
    QuadratureResult q = cp_integrate(
        f.dim,
        [&f](const SphericalChart& c) {
            const double v = f.density(c);
            return v > 0.0 ? -v * std::log(v) : 0.0;
        },
        1e-6, 16, f.dim == 1 ? 512 : 64);
    return {q.value, q.residual};
}

FullspaceAsymptote fullspace_renyi_asymptotic(const DensityMeasure& f, double n, double m) {
    if (!(n >= 1.0)) throw std::invalid_argument("fullspace_renyi_asymptotic: n >= 1");
    if (!f.density) throw std::invalid_argument("fullspace_renyi_asymptotic: missing density");
    const double d = 2.0 * f.dim;
    FullspaceAsymptote out;
    if (n == 1.0) {
        GeometricEntropy ge = geometric_entropy(f);
        out.density_integral = ge.value;
        out.quadrature_residual = ge.residual;
        out.value = 0.5 * d * std::log(std::numbers::e * m / (8.0 * pi)) + ge.value;
        out.within_validity = std::abs(ge.value) <= 0.5 * d * std::log(m / (8.0 * pi));
        return out;
    }
    QuadratureResult q = cp_integrate(
        f.dim, [&f, n](const SphericalChart& c) { return std::pow(f.density(c), n); }, 1e-6,
        16, f.dim == 1 ? 512 : 64);
    if (q.residual > 1e-3 * std::max(std::abs(q.value), 1e-300))
        throw numerical_error("fullspace_renyi_asymptotic: quadrature did not converge");
    out.density_integral = q.value;
    out.quadrature_residual = q.residual;
    const double o1 = (std::log(q.value) - 0.5 * d * std::log(n)) / (1.0 - n);
    out.value = 0.5 * d * std::log(m / (8.0 * pi)) + o1;
    out.within_validity = std::abs(o1) <= 0.5 * d * std::log(m / (8.0 * pi));
    return out;
}

double single_copy_asymptotic(double f_max, double d, double m) {
    if (!(f_max > 0.0)) throw std::invalid_argument("single_copy_asymptotic: f_max > 0");
    return 0.5 * d * std::log(m / (8.0 * pi)) - std::log(f_max);
}

double generic_scaling(double d, double n, double m, int dim_d) {
    if (!(n >= 1.0)) throw std::invalid_argument("generic_scaling: n >= 1");
    if (d < 0.0 || d > 2.0 * dim_d)
        throw std::invalid_argument("generic_scaling: d must lie in [0, 2D]");
    return 0.5 * d * std::log(m);
}

} // namespace spinent
