#ifndef SPINENT_ASYMPTOTICS_HPP
#define SPINENT_ASYMPTOTICS_HPP

#include <string>

#include "spinent/measures.hpp"

namespace spinent {

/// A large-m entropy law S(m) = leading_coeff * log(scale * m) + constant_term.
/// leading_coeff is d/2; the scale inside the log (2pi, 2pi e, 1/(8pi), ...)
/// is kept exactly as the closed forms state it so the constant term can be
/// tested empirically.
struct AsymptoticPrediction {
    double leading_coeff = 0.0;
    double log_argument_scale = 1.0;
    double constant_term = 0.0;
    double n = 1.0;
    std::string formula_tag;

    double at(double m) const {
        return leading_coeff * std::log(log_argument_scale * m) + constant_term;
    }
};

/// Torus-measure large-m law, real n >= 1 (inf = single-copy):
///   n > 1:  s log(2 pi m) + s log(n)/(n-1) + (1/2) log prod p_i
///   n = 1:  s log(2 pi e m) + (1/2) log prod p_i
/// Throws std::domain_error if any p_j vanishes (use TorusMeasure::reduced()).
AsymptoticPrediction torus_renyi_prediction(const TorusMeasure& p, double n);
double torus_renyi_asymptotic(const TorusMeasure& p, double n, double m);

/// Closed-form Gaussian determinant n^D (p_D / prod_{j<D} p_j)^(n-1).
double detA_closed(const TorusMeasure& p, int n);

/// The same determinant from the assembled quadratic form A = L'_n (x) B,
/// where B_kk = (1-p_k)/p_k, B_jk = -1 and L'_n is the cycle Laplacian on n
/// nodes with one node eliminated. D(n-1) <= 64.
double detA_numeric(const TorusMeasure& p, int n);

struct FullspaceAsymptote {
    double value = 0.0;
    double density_integral = 0.0; // int f^n (or -int f log f at n = 1)
    double quadrature_residual = 0.0;
    bool within_validity = true; // false once |O(1)| exceeds the leading term
};

/// Full-space density law (d = 2D):
///   n > 1:  (d/2) log(m/8pi) + (1/(1-n)) log(n^{-d/2} int f^n)
///   n = 1:  (d/2) log(e m/8pi) - int f log f
FullspaceAsymptote fullspace_renyi_asymptotic(const DensityMeasure& f, double n, double m);

struct GeometricEntropy {
    double value = 0.0;
    double residual = 0.0;
};

/// -int f log f against the Fubini-Study volume element.
GeometricEntropy geometric_entropy(const DensityMeasure& f);

/// Single-copy saddle point (d/2) log(m/8pi) - log f_max.
double single_copy_asymptotic(double f_max, double d, double m);

/// Leading term (d/2) log m only.
double generic_scaling(double d, double n, double m, int dim_d);

} // namespace spinent

#endif
