#ifndef SPINENT_MEASURES_HPP
#define SPINENT_MEASURES_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "spinent/projective.hpp"

namespace spinent {

struct Atom {
    ProjectivePoint point;
    double weight;
};

/// Measure supported on a finite atom set; weights are the |c_v|^2 of the
/// underlying linear combination and sum to one.
struct DiscreteMeasure {
    std::vector<Atom> atoms;
    int dim_d() const { return atoms.empty() ? 0 : atoms.front().point.dim_d(); }
};

/// Uniform measure over the torus of phases at fixed amplitudes a_j = sqrt(p_j).
struct TorusMeasure {
    std::vector<double> p; // D+1 probabilities, sum 1
    int dim_d() const { return static_cast<int>(p.size()) - 1; }
    bool has_zero_component() const;
    /// Drop zero entries; the reduced measure lives on CP^{D'} with D' < D.
    TorusMeasure reduced() const;
};

/// Measure with a density f with respect to the Fubini-Study volume element
/// d^{2D}v. sample() requires a finite envelope bound with f <= envelope.
struct DensityMeasure {
    int dim = 1;
    std::function<double(const SphericalChart&)> density;
    double envelope = 0.0; // 0 = not configured
    bool normalization_checked = false;
    int dim_d() const { return dim; }
};

/// Self-similar measure of an equal-ratio, equal-weight iterated function
/// system x -> ratio*x + offset_b on [0,1] (open-set condition assumed),
/// pushed onto CP^D through an embedding map.
struct IfsMeasure {
    double ratio = 1.0 / 3.0;
    std::vector<double> offsets;
    std::function<ProjectivePoint(double)> embed;
    int dim = 1;
    int sample_depth = 40;
    int dim_d() const { return dim; }
    std::size_t branches() const { return offsets.size(); }
};

using SpinMeasure = std::variant<DiscreteMeasure, TorusMeasure, DensityMeasure, IfsMeasure>;

/// The Cantor-set measure: branches x/3 and (x+2)/3 on [0,1], embedded on the
/// z = 0 great circle of the Bloch sphere through x -> (cos pi x, sin pi x, 0).
IfsMeasure cantor_measure();

/// Embedding of the half great circle used by cantor_measure, as a point of CP^1.
ProjectivePoint great_circle_point(double x);

/// Check the family invariants; throws normalization_error (with the measured
/// deficit) or std::invalid_argument on violation.
void validate(const SpinMeasure& measure);

/// Draw one mu-distributed point. The caller owns the random state; parallel
/// use requires independent engines.
ProjectivePoint sample(const SpinMeasure& measure, std::mt19937_64& rng);

/// The level-k atom set of an IFS measure (branches^k atoms, equal weights).
DiscreteMeasure atoms_at_level(const IfsMeasure& measure, int k,
                               std::size_t atom_cap = 1u << 20);

/// Level-k atoms as parameters in [0,1], sorted ascending.
std::vector<double> ifs_parameters_at_level(const IfsMeasure& measure, int k,
                                            std::size_t atom_cap = 1u << 20);

/// Dimension of the support: 0 for discrete, D for the torus family, 2D for a
/// full-space density, log(#branches)/log(1/ratio) for an IFS.
double support_dimension(const SpinMeasure& measure);

int measure_dim_d(const SpinMeasure& measure);

/// Short human-readable description (family tag plus numeric parameters).
std::string describe(const SpinMeasure& measure);

} // namespace spinent

#endif
