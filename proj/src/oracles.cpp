#include "spinent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinent/errors.hpp"
#include "spinent/kernels.hpp"
#include "spinent/quad_complex.hpp"

namespace spinent {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr long long dense_state_cap = 1 << 16;
} // namespace

long long DickeOccupation::total() const {
    long long n = 0;
    for (long long c : counts) n += c;
    return n;
}

void DickeOccupation::check() const {
    if (counts.size() < 2)
        throw std::invalid_argument("DickeOccupation: need D+1 >= 2 species");
    for (long long c : counts)
        if (c < 0) throw std::invalid_argument("DickeOccupation: negative count");
    if (total() < 1) throw std::invalid_argument("DickeOccupation: N >= 1");
}

void ProductCombination::check() const {
    if (coefficients.size() != points.size() || points.empty())
        throw std::invalid_argument("ProductCombination: coefficient/point mismatch");
    if (n_sites < 1) throw std::invalid_argument("ProductCombination: N >= 1");
    bool any = false;
    for (const cplx& c : coefficients) any = any || std::abs(c) > 0.0;
    if (!any) throw std::invalid_argument("ProductCombination: all coefficients zero");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (fs_distance(points[i], points[j]) <= 1e-9)
                throw std::invalid_argument("ProductCombination: colinear points");
}

double BlockSpectrum::sum() const {
    double s = 0.0;
    for (const SpectrumEntry& e : entries) s += e.lambda;
    return s;
}

namespace {

double log_binomial(long long n, long long k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Window of block occupations contributing non-negligibly to the spectrum.
// Full species ranges are used when small; otherwise a Gaussian window of
// half-width `nsd` standard deviations (the tail mass beyond 24 sd is below
// e^{-280} relative and cannot move any of the accumulated sums).
kernels::DickeWindow make_window(const DickeOccupation& occ, long long m, double nsd) {
    occ.check();
    const long long N = occ.total();
    if (m < 1 || m > N - 1)
        throw std::invalid_argument("dicke_spectrum: need 1 <= m <= N-1");
    const std::size_t S = occ.counts.size();
    kernels::DickeWindow win;
    win.m = m;
    win.lo.resize(S);
    win.hi.resize(S);
    for (std::size_t j = 0; j < S; ++j) {
        const long long Nj = occ.counts[j];
        long long lo = std::max<long long>(0, m - (N - Nj));
        long long hi = std::min(Nj, m);
        const double pj = static_cast<double>(Nj) / static_cast<double>(N);
        const double mean = static_cast<double>(m) * pj;
        const double var = static_cast<double>(m) * pj * (1.0 - pj) *
                           static_cast<double>(N - m) / static_cast<double>(std::max<long long>(N - 1, 1));
        const double half = nsd * std::sqrt(std::max(var, 0.0)) + 8.0;
        lo = std::max(lo, static_cast<long long>(std::floor(mean - half)));
        hi = std::min(hi, static_cast<long long>(std::ceil(mean + half)));
        if (lo > hi)
            throw numerical_error("dicke window: empty species range");
        win.lo[j] = lo;
        win.hi[j] = hi;
    }
    win.const_term = log_binomial(N, m) * -1.0;
    win.tables.resize(S);
    for (std::size_t j = 0; j < S; ++j) {
        win.tables[j].resize(static_cast<std::size_t>(win.hi[j] - win.lo[j] + 1));
        for (long long k = win.lo[j]; k <= win.hi[j]; ++k)
            win.tables[j][static_cast<std::size_t>(k - win.lo[j])] =
                log_binomial(occ.counts[j], k);
    }
    return win;
}

double window_entry_bound(const kernels::DickeWindow& win) {
    double prod = 1.0;
    for (std::size_t j = 0; j + 1 < win.lo.size(); ++j)
        prod *= static_cast<double>(win.hi[j] - win.lo[j] + 1);
    return prod;
}

} // namespace

BlockSpectrum dicke_spectrum(const DickeOccupation& occ, long long m, long long max_entries) {
    kernels::DickeWindow win = make_window(occ, m, 24.0);
    if (window_entry_bound(win) > static_cast<double>(max_entries))
        throw budget_error("dicke_spectrum: entry count exceeds budget");

    BlockSpectrum spec;
    const std::size_t S = win.lo.size();
    std::vector<long long> k(S, 0);
    // Odometer over the free species 0..S-2; the last species is dependent.
    for (std::size_t j = 0; j + 1 < S; ++j) k[j] = win.lo[j];
    double sum = 0.0;
    for (;;) {
        long long rem = m;
        for (std::size_t j = 0; j + 1 < S; ++j) rem -= k[j];
        if (rem >= win.lo[S - 1] && rem <= win.hi[S - 1]) {
            k[S - 1] = rem;
            double ll = win.const_term;
            for (std::size_t j = 0; j < S; ++j)
                ll += win.tables[j][static_cast<std::size_t>(k[j] - win.lo[j])];
            const double lam = std::exp(ll);
            if (lam > 0.0) {
                spec.entries.push_back({k, lam});
                sum += lam;
            }
        }
        std::size_t j = 0;
        while (j + 1 < S && ++k[j] > win.hi[j]) {
            k[j] = win.lo[j];
            ++j;
        }
        if (j + 1 >= S) break;
    }
    if (!(sum > 0.0)) throw numerical_error("dicke_spectrum: vanishing total weight");
    for (SpectrumEntry& e : spec.entries) e.lambda /= sum;
    std::sort(spec.entries.begin(), spec.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.lambda > b.lambda; });
    return spec;
}

std::vector<boost::multiprecision::cpp_rational>
dicke_spectrum_rational(const DickeOccupation& occ, long long m) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    occ.check();
    const long long N = occ.total();
    if (N > 1000) throw budget_error("dicke_spectrum_rational: N <= 1000");
    if (m < 1 || m > N - 1)
        throw std::invalid_argument("dicke_spectrum_rational: need 1 <= m <= N-1");

    auto binom = [](long long n, long long k) {
        cpp_int r = 1;
        for (long long i = 1; i <= k; ++i) {
            r *= (n - k + i);
            r /= i;
        }
        return r;
    };
    const cpp_int denom = binom(N, m);
    const std::size_t S = occ.counts.size();
    std::vector<long long> k(S, 0);
    std::vector<cpp_rational> out;
    for (;;) {
        long long rem = m;
        for (std::size_t j = 0; j + 1 < S; ++j) rem -= k[j];
        if (rem >= 0 && rem <= std::min(occ.counts[S - 1], m)) {
            k[S - 1] = rem;
            cpp_int num = 1;
            for (std::size_t j = 0; j < S; ++j) num *= binom(occ.counts[j], k[j]);
            if (num != 0) out.emplace_back(num, denom);
        }
        std::size_t j = 0;
        while (j + 1 < S && ++k[j] > std::min(occ.counts[j], m)) {
            k[j] = 0;
            ++j;
        }
        if (j + 1 >= S) break;
    }
    return out;
}

std::vector<double> dicke_renyi_multi(const DickeOccupation& occ, long long m,
                                      std::span<const double> ns) {
    kernels::DickeWindow win = make_window(occ, m, 24.0);
    if (window_entry_bound(win) > 4e8)
        throw budget_error("dicke_renyi: windowed entry count exceeds budget");

    std::vector<double> finite_ns;
    for (double n : ns) {
        if (std::isinf(n) || n == 1.0) continue;
        if (!(n > 1.0)) throw std::invalid_argument("dicke_renyi: n >= 1");
        finite_ns.push_back(n);
    }
    const kernels::DickeSums sums = kernels::dicke_window_sums_omp(win, finite_ns);
    // Deviations up to ~1e-5 come from lgamma rounding at N ~ 1e9; they are a
    // common factor and cancel in the normalized entropies below.
    if (!(std::abs(sums.sum1 - 1.0) < 1e-3))
        throw numerical_error("dicke_renyi: spectrum mass deviates from 1");

    const double log_s1 = std::log(sums.sum1);
    std::vector<double> out;
    out.reserve(ns.size());
    std::size_t fi = 0;
    for (double n : ns) {
        if (std::isinf(n)) {
            out.push_back(-(sums.max_log - log_s1));
        } else if (n == 1.0) {
            out.push_back(log_s1 - sums.sum_llog / sums.sum1);
        } else {
            const double log_mn = std::log(sums.sum_pow[fi]) - n * log_s1;
            out.push_back(log_mn / (1.0 - n));
            ++fi;
        }
    }
    return out;
}

double dicke_renyi(const DickeOccupation& occ, long long m, double n) {
    const double ns[1] = {n};
    return dicke_renyi_multi(occ, m, ns)[0];
}

namespace {

// Frame overlap powers and coefficients of a product combination, in quad
// precision. moment = S / Z^n with
//   S = sum over (v_1..v_n, w_1..w_n) of
//       prod_alpha c_{v_a} conj(c_{w_a}) (w_a^dag v_a)^{N-m} (w_a^dag v_{a+1})^m
//   Z = sum_{v,w} c_v conj(c_w) (w^dag v)^N.
struct PcQuad {
    std::size_t V;
    std::vector<qcplx> c;
    std::vector<qcplx> g_nm; // (w^dag v)^{N-m}, row w, col v
    std::vector<qcplx> g_m;  // (w^dag v)^m
    qcplx z;                 // <psi|psi>
};

PcQuad prepare_pc(const ProductCombination& pc, long long m, long long n_sites) {
    PcQuad q;
    q.V = pc.points.size();
    q.c.reserve(q.V);
    for (const cplx& c : pc.coefficients) q.c.emplace_back(c);
    q.g_nm.resize(q.V * q.V);
    q.g_m.resize(q.V * q.V);
    q.z = qcplx(0, 0);
    for (std::size_t w = 0; w < q.V; ++w) {
        for (std::size_t v = 0; v < q.V; ++v) {
            qcplx g(0, 0);
            for (int j = 0; j <= pc.points[w].dim_d(); ++j)
                g += qcplx(pc.points[w][static_cast<std::size_t>(j)]).conj() *
                     qcplx(pc.points[v][static_cast<std::size_t>(j)]);
            q.g_nm[w * q.V + v] = qpow(g, n_sites - m);
            q.g_m[w * q.V + v] = qpow(g, m);
            q.z += q.c[v] * q.c[w].conj() * qpow(g, n_sites);
        }
    }
    return q;
}

qcplx pc_moment_quad(const ProductCombination& pc, long long m, int n, double max_terms) {
    pc.check();
    if (n < 2) throw std::invalid_argument("product_combination_moment: n >= 2");
    if (m < 1 || m > pc.n_sites - 1)
        throw std::invalid_argument("product_combination_moment: need 1 <= m <= N-1");
    const std::size_t V = pc.points.size();
    if (std::pow(static_cast<double>(V), 2.0 * n) > max_terms)
        throw budget_error("product_combination_moment: |V|^{2n} exceeds budget");

    const PcQuad q = prepare_pc(pc, m, pc.n_sites);
    if (!(q.z.real_d() > 0.0) ||
        std::abs(q.z.imag_d()) > 1e-12 * std::max(q.z.real_d(), 1e-300))
        throw numerical_error("product_combination_moment: ill-conditioned norm Z");

    // Chains are indexed by 2n base-V digits: (v_1, w_1, ..., v_n, w_n).
    // The outer (v_1, w_1) pair is parallelized with ordered combination.
    const std::size_t outer = V * V;
    const int inner_digits = 2 * (n - 1);
    std::vector<qcplx> partial(outer);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t o = 0; o < static_cast<std::ptrdiff_t>(outer); ++o) {
        const std::size_t v1 = static_cast<std::size_t>(o) / V;
        const std::size_t w1 = static_cast<std::size_t>(o) % V;
        std::vector<std::size_t> vs(static_cast<std::size_t>(n)), ws(static_cast<std::size_t>(n));
        vs[0] = v1;
        ws[0] = w1;
        qcplx acc(0, 0);
        std::vector<std::size_t> digits(static_cast<std::size_t>(inner_digits), 0);
        for (;;) {
            for (int a = 1; a < n; ++a) {
                vs[static_cast<std::size_t>(a)] = digits[static_cast<std::size_t>(2 * (a - 1))];
                ws[static_cast<std::size_t>(a)] = digits[static_cast<std::size_t>(2 * (a - 1) + 1)];
            }
            qcplx term(1, 0);
            for (int a = 0; a < n; ++a) {
                const std::size_t va = vs[static_cast<std::size_t>(a)];
                const std::size_t wa = ws[static_cast<std::size_t>(a)];
                const std::size_t vnext = vs[static_cast<std::size_t>((a + 1) % n)];
                term = term * q.c[va] * q.c[wa].conj() * q.g_nm[wa * V + va] *
                       q.g_m[wa * V + vnext];
            }
            acc += term;
            int d = 0;
            while (d < inner_digits && ++digits[static_cast<std::size_t>(d)] == V)
                digits[static_cast<std::size_t>(d++)] = 0;
            if (d == inner_digits) break;
        }
        partial[static_cast<std::size_t>(o)] = acc;
    }
    qcplx total(0, 0);
    for (const qcplx& part : partial) total += part;
    return total / qpow(q.z, n);
}

} // namespace

double product_combination_moment(const ProductCombination& pc, long long m, int n,
                                  double max_terms) {
    const qcplx moment = pc_moment_quad(pc, m, n, max_terms);
    if (std::abs(moment.imag_d()) > 1e-10 * std::max(std::abs(moment.real_d()), 1e-300))
        throw numerical_error("product_combination_moment: moment not real");
    return moment.real_d();
}

double thermo_moment_gap(const ProductCombination& pc, long long m, int n) {
    const qcplx pcm = pc_moment_quad(pc, m, n, 4e7);

    // Thermodynamic-limit moment of the induced discrete measure, same precision.
    const std::size_t V = pc.points.size();
    std::vector<__float128> weight(V);
    __float128 wsum = 0;
    for (std::size_t v = 0; v < V; ++v) {
        const qcplx c(pc.coefficients[v]);
        weight[v] = (c * c.conj()).re;
        wsum += weight[v];
    }
    for (std::size_t v = 0; v < V; ++v) weight[v] /= wsum;
    std::vector<qcplx> g_m(V * V);
    for (std::size_t w = 0; w < V; ++w)
        for (std::size_t v = 0; v < V; ++v) {
            qcplx g(0, 0);
            for (int j = 0; j <= pc.points[w].dim_d(); ++j)
                g += qcplx(pc.points[w][static_cast<std::size_t>(j)]).conj() *
                     qcplx(pc.points[v][static_cast<std::size_t>(j)]);
            g_m[w * V + v] = qpow(g, m);
        }
    qcplx md(0, 0);
    std::vector<std::size_t> chain(static_cast<std::size_t>(n), 0);
    for (;;) {
        qcplx term(1, 0);
        for (int a = 0; a < n; ++a) {
            const std::size_t va = chain[static_cast<std::size_t>(a)];
            const std::size_t vb = chain[static_cast<std::size_t>((a + 1) % n)];
            term = weight[va] * term * g_m[va * V + vb];
        }
        md += term;
        int d = 0;
        while (d < n && ++chain[static_cast<std::size_t>(d)] == V)
            chain[static_cast<std::size_t>(d++)] = 0;
        if (d == n) break;
    }
    const __float128 gap = pcm.re - md.re;
    return std::abs(static_cast<double>(gap));
}

std::vector<double> brute_force_reduced_spectrum(const Eigen::VectorXcd& state, int dim_site,
                                                 int n_sites, int m) {
    if (dim_site < 2 || n_sites < 2) throw std::invalid_argument("brute force: bad dims");
    long long dim = 1;
    for (int i = 0; i < n_sites; ++i) {
        dim *= dim_site;
        if (dim > dense_state_cap) throw budget_error("brute force: state exceeds 2^16 cap");
    }
    if (state.size() != dim) throw std::invalid_argument("brute force: state size mismatch");
    if (m < 1 || m > n_sites - 1) throw std::invalid_argument("brute force: need 1 <= m <= N-1");

    long long dim_a = 1;
    for (int i = 0; i < m; ++i) dim_a *= dim_site;
    const long long dim_b = dim / dim_a;
    const double norm2 = state.squaredNorm();
    if (!(norm2 > 0.0)) throw std::invalid_argument("brute force: zero state");

    // Site 0 is the most significant digit, so A = first m sites is the row index.
    Eigen::MatrixXcd M(dim_a, dim_b);
    for (long long ia = 0; ia < dim_a; ++ia)
        for (long long ib = 0; ib < dim_b; ++ib) M(ia, ib) = state(ia * dim_b + ib);

    Eigen::MatrixXcd gram;
    if (dim_a <= dim_b) gram = M * M.adjoint();
    else gram = M.adjoint() * M;
    gram /= norm2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (double& l : lam) l = std::max(l, 0.0);
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return lam;
}

double spectrum_renyi(std::span<const double> lambdas, double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("spectrum_renyi: n >= 1");
    if (std::isinf(n)) {
        double mx = 0.0;
        for (double l : lambdas) mx = std::max(mx, l);
        return -std::log(mx);
    }
    if (n == 1.0) {
        double s = 0.0;
        for (double l : lambdas)
            if (l > 0.0) s -= l * std::log(l);
        return s;
    }
    double sum = 0.0;
    for (double l : lambdas)
        if (l > 0.0) sum += std::pow(l, n);
    return std::log(sum) / (1.0 - n);
}

namespace {

long long checked_dense_dim(int dim_site, long long n_sites) {
    long long dim = 1;
    for (long long i = 0; i < n_sites; ++i) {
        dim *= dim_site;
        if (dim > dense_state_cap)
            throw budget_error("dense Dicke construction: (D+1)^N exceeds 2^16 cap");
    }
    return dim;
}

} // namespace

Eigen::VectorXcd symmetrize_dicke(const DickeOccupation& occ) {
    occ.check();
    const long long N = occ.total();
    const int S = static_cast<int>(occ.counts.size());
    const long long dim = checked_dense_dim(S, N);

    double log_coeff = -std::lgamma(static_cast<double>(N) + 1.0);
    for (long long c : occ.counts) log_coeff += std::lgamma(static_cast<double>(c) + 1.0);
    const double coeff = std::exp(0.5 * log_coeff);

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    std::vector<long long> tally(static_cast<std::size_t>(S));
    for (long long idx = 0; idx < dim; ++idx) {
        std::fill(tally.begin(), tally.end(), 0);
        long long rest = idx;
        for (long long site = 0; site < N; ++site) {
            ++tally[static_cast<std::size_t>(rest % S)];
            rest /= S;
        }
        bool match = true;
        for (int j = 0; j < S; ++j) match = match && tally[static_cast<std::size_t>(j)] == occ.counts[static_cast<std::size_t>(j)];
        if (match) out(idx) = coeff;
    }
    return out;
}

Eigen::VectorXcd reconstruct_dicke(const DickeOccupation& occ, std::span<const double> a) {
    occ.check();
    const long long N = occ.total();
    const int S = static_cast<int>(occ.counts.size());
    const int D = S - 1;
    if (static_cast<int>(a.size()) != S)
        throw std::invalid_argument("reconstruct_dicke: need D+1 amplitudes");
    double norm = 0.0;
    for (double x : a) {
        if (x < 0.0) throw std::invalid_argument("reconstruct_dicke: amplitudes must be >= 0");
        norm += x * x;
    }
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("reconstruct_dicke: amplitudes must satisfy sum a^2 = 1");
    for (int j = 0; j < S; ++j)
        if (a[static_cast<std::size_t>(j)] == 0.0 && occ.counts[static_cast<std::size_t>(j)] > 0)
            throw std::invalid_argument("reconstruct_dicke: a_j = 0 with N_j > 0 is singular");

    const long long dim = checked_dense_dim(S, N);

    double log_pref = -0.5 * std::lgamma(static_cast<double>(N) + 1.0);
    for (int j = 0; j < S; ++j) {
        log_pref += 0.5 * std::lgamma(static_cast<double>(occ.counts[static_cast<std::size_t>(j)]) + 1.0);
        if (occ.counts[static_cast<std::size_t>(j)] > 0)
            log_pref -= static_cast<double>(occ.counts[static_cast<std::size_t>(j)]) *
                        std::log(a[static_cast<std::size_t>(j)]);
    }
    const double pref = std::exp(log_pref);

    // Each theta_j integral (j < D) of the degree <= N trigonometric
    // polynomial is replaced by its exact (N+1)-point uniform sum.
    const long long Q = N + 1;
    long long grid = 1;
    for (int j = 0; j < D; ++j) grid *= Q;

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    std::vector<cplx> site_amp(static_cast<std::size_t>(S));
    std::vector<long long> t(static_cast<std::size_t>(D));
    for (long long g = 0; g < grid; ++g) {
        long long rest = g;
        double phase_weight = 0.0;
        for (int j = 0; j < D; ++j) {
            t[static_cast<std::size_t>(j)] = rest % Q;
            rest /= Q;
            phase_weight += two_pi * static_cast<double>(t[static_cast<std::size_t>(j)]) /
                            static_cast<double>(Q) *
                            static_cast<double>(occ.counts[static_cast<std::size_t>(j)]);
        }
        for (int j = 0; j < D; ++j)
            site_amp[static_cast<std::size_t>(j)] =
                std::polar(a[static_cast<std::size_t>(j)],
                           two_pi * static_cast<double>(t[static_cast<std::size_t>(j)]) /
                               static_cast<double>(Q));
        site_amp[static_cast<std::size_t>(D)] = cplx(a[static_cast<std::size_t>(D)], 0.0);
        const cplx outer_phase = std::polar(1.0, -phase_weight);

        for (long long idx = 0; idx < dim; ++idx) {
            cplx ampl(1.0, 0.0);
            long long digits = idx;
            for (long long site = 0; site < N; ++site) {
                ampl *= site_amp[static_cast<std::size_t>(digits % S)];
                digits /= S;
            }
            out(idx) += outer_phase * ampl;
        }
    }
    out *= pref / static_cast<double>(grid);
    return out;
}

cplx twist_expectation(std::span<const ProjectivePoint> replica_points, long long m) {
    if (replica_points.size() < 2)
        throw std::invalid_argument("twist_expectation: n >= 2 replicas");
    if (m < 1) throw std::invalid_argument("twist_expectation: m >= 1");
    return log_chain_product(replica_points, static_cast<double>(m)).value();
}

cplx twist_expectation_brute(std::span<const ProjectivePoint> replica_points, int m) {
    const int n = static_cast<int>(replica_points.size());
    if (n < 2) throw std::invalid_argument("twist_expectation_brute: n >= 2 replicas");
    if (m < 1) throw std::invalid_argument("twist_expectation_brute: m >= 1");
    const int d = replica_points[0].dim_d() + 1;
    for (const ProjectivePoint& p : replica_points)
        if (p.dim_d() + 1 != d) throw std::invalid_argument("twist_expectation_brute: mixed dims");
    const long long dim = checked_dense_dim(d, static_cast<long long>(n) * m);

    // State ordering: site-major, replica-minor; digit p = i*n + alpha
    // (least significant digit is (site m-1, replica n-1)).
    Eigen::VectorXcd phi(dim);
    for (long long idx = 0; idx < dim; ++idx) {
        cplx ampl(1.0, 0.0);
        long long rest = idx;
        for (int p = n * m - 1; p >= 0; --p) {
            const int alpha = p % n;
            ampl *= replica_points[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(rest % d)];
            rest /= d;
        }
        phi(idx) = ampl;
    }

    // T_A permutes, on every site, the replica digits cyclically:
    // new digit (i, alpha) = old digit (i, alpha+1 mod n).
    cplx acc(0.0, 0.0);
    std::vector<int> digits(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    for (long long idx = 0; idx < dim; ++idx) {
        long long rest = idx;
        for (int p = n * m - 1; p >= 0; --p) {
            digits[static_cast<std::size_t>(p)] = static_cast<int>(rest % d);
            rest /= d;
        }
        long long sigma = 0;
        for (int p = 0; p < n * m; ++p) {
            const int site = p / n;
            const int alpha = p % n;
            const int src = site * n + (alpha + 1) % n;
            sigma = sigma * d + digits[static_cast<std::size_t>(src)];
        }
        acc += std::conj(phi(sigma)) * phi(idx);
    }
    return acc;
}

} // namespace spinent
