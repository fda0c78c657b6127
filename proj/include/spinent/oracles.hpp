#ifndef SPINENT_ORACLES_HPP
#define SPINENT_ORACLES_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "spinent/projective.hpp"

namespace spinent {

/// Occupation numbers N_0..N_D of a Dicke state on N = sum N_j sites.
struct DickeOccupation {
    std::vector<long long> counts;
    long long total() const;
    int dim_d() const { return static_cast<int>(counts.size()) - 1; }
    void check() const;
};

/// Finite linear combination sum_v c_v |v>^{otimes N} of product states over
/// pairwise distinct directions.
struct ProductCombination {
    std::vector<cplx> coefficients;
    std::vector<ProjectivePoint> points;
    long long n_sites = 0;
    void check() const;
};

struct SpectrumEntry {
    std::vector<long long> pattern; // block occupation k_0..k_D
    double lambda;
};

/// Reduced-block eigenvalues, normalized to sum 1.
struct BlockSpectrum {
    std::vector<SpectrumEntry> entries;
    double sum() const;
};

/// Reduced m-site spectrum of a Dicke state: the multivariate hypergeometric
/// law lambda(k) = [m!/prod k_j!] [(N-m)!/prod (N_j-k_j)!] / [N!/prod N_j!],
/// evaluated through log-gamma. Entries with negligible weight (relative
/// magnitude below ~e^{-200}) are windowed out for very large blocks.
BlockSpectrum dicke_spectrum(const DickeOccupation& occ, long long m,
                             long long max_entries = 1 << 22);

/// Exact rational spectrum (lambda = prod C(N_j,k_j) / C(N,m)); pins the
/// formula for small N. Requires N <= 1000.
std::vector<boost::multiprecision::cpp_rational>
dicke_spectrum_rational(const DickeOccupation& occ, long long m);

/// Renyi entropy of the Dicke block spectrum at real n >= 1; n = 1 is the von
/// Neumann branch, n = +infinity the single-copy branch -log(max lambda).
double dicke_renyi(const DickeOccupation& occ, long long m, double n);

/// Same spectrum accumulation, several n at once (one enumeration pass).
std::vector<double> dicke_renyi_multi(const DickeOccupation& occ, long long m,
                                      std::span<const double> ns);

/// Exact finite-N moment Tr rho_A^n of a product combination, via the
/// 2n-index sum over frame overlaps (quad-precision accumulation):
///   Z^{-n} sum prod_alpha c_{v_a} c*_{w_a} (w_a^dag v_a)^{N-m} (w_a^dag v_{a+1})^m.
double product_combination_moment(const ProductCombination& pc, long long m, int n,
                                  double max_terms = 4e7);

/// |product_combination_moment(N) - discrete-measure moment| for the measure
/// with weights |c_v|^2 / sum |c|^2 on the same points, both sides evaluated
/// in quad precision so the exponentially small gap survives down to ~1e-30.
double thermo_moment_gap(const ProductCombination& pc, long long m, int n);

/// Eigenvalues of the reduced density matrix of the first m sites of a dense
/// state vector on (C^{D+1})^{otimes N}, descending. dim must be (D+1)^N <= 2^16.
std::vector<double> brute_force_reduced_spectrum(const Eigen::VectorXcd& state, int dim_site,
                                                 int n_sites, int m);

/// Renyi entropy from an explicit eigenvalue list (n >= 1, inf allowed).
double spectrum_renyi(std::span<const double> lambdas, double n);

/// The normalized Dicke vector with the given occupation, as a dense vector
/// over (C^{D+1})^{otimes N} (site-major digits, site 0 most significant).
Eigen::VectorXcd symmetrize_dicke(const DickeOccupation& occ);

/// The basis-inversion reconstruction of the Dicke vector from zero-
/// entanglement vectors: each phase integral is replaced by its exact
/// (N+1)-point discrete sum. Result is a-independent and equals
/// symmetrize_dicke for every valid amplitude vector a (sum a_j^2 = 1).
Eigen::VectorXcd reconstruct_dicke(const DickeOccupation& occ, std::span<const double> a);

/// Evaluated cyclic replica permutation operator on an m-site block:
/// prod_alpha (v_alpha^dag v_{alpha+1})^m.
cplx twist_expectation(std::span<const ProjectivePoint> replica_points, long long m);

/// Same expectation from the elementary-matrix construction of the twist
/// operator on n replicas of m sites ((D+1)^{n m} <= 2^16).
cplx twist_expectation_brute(std::span<const ProjectivePoint> replica_points, int m);

} // namespace spinent

#endif
