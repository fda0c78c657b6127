#include "spinent/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace spinent::kernels {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double log_abs_overlap(const cplx* a, const cplx* b, int dim) {
    cplx s(0.0, 0.0);
    for (int j = 0; j <= dim; ++j) s += std::conj(a[j]) * b[j];
    double mod = std::abs(s);
    return mod > 0.0 ? std::log(mod) : neg_inf;
}

// Contribution of atom row i against all rows j >= i (upper triangle, doubled
// off the diagonal). The pair sum is symmetric in (i, j).
double pair_row_sum(const AtomsView& atoms, std::size_t i, double two_m, double log_floor) {
    const double wi = atoms.weights[i];
    double acc = wi * wi; // j == i, overlap 1
    for (std::size_t j = i + 1; j < atoms.count; ++j) {
        const double e = two_m * log_abs_overlap(atoms.row(i), atoms.row(j), atoms.dim);
        if (e < log_floor) continue;
        acc += 2.0 * wi * atoms.weights[j] * std::exp(e);
    }
    return acc;
}

} // namespace

double discrete_pair_sum_serial(const AtomsView& atoms, double m, double log_floor) {
    Kahan total;
    for (std::size_t i = 0; i < atoms.count; ++i)
        total.add(pair_row_sum(atoms, i, 2.0 * m, log_floor));
    return total.sum;
}

double discrete_pair_sum_omp(const AtomsView& atoms, double m, double log_floor) {
    constexpr std::size_t chunk_rows = 64;
    const std::size_t n_chunks = (atoms.count + chunk_rows - 1) / chunk_rows;
    std::vector<double> partial(n_chunks, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk_rows;
        const std::size_t hi = std::min(lo + chunk_rows, atoms.count);
        Kahan acc;
        for (std::size_t i = lo; i < hi; ++i)
            acc.add(pair_row_sum(atoms, i, 2.0 * m, log_floor));
        partial[static_cast<std::size_t>(c)] = acc.sum;
    }
    Kahan total;
    for (double x : partial) total.add(x);
    return total.sum;
}

namespace {

// Neighborhood [jlo, jhi) of xs[i] within |x - xs[i]| <= radius.
std::pair<std::size_t, std::size_t> radius_range(std::span<const double> xs, double x,
                                                 double radius) {
    auto lo = std::lower_bound(xs.begin(), xs.end(), x - radius);
    auto hi = std::upper_bound(xs.begin(), xs.end(), x + radius);
    return {static_cast<std::size_t>(lo - xs.begin()), static_cast<std::size_t>(hi - xs.begin())};
}

struct GaussPartial {
    double sum = 0.0;
    double dropped = 0.0; // count of dropped chain terms
};

GaussPartial gaussian_pair_rows(std::span<const double> xs, double coef, double radius,
                                std::size_t lo, std::size_t hi) {
    GaussPartial out;
    Kahan acc;
    const std::size_t V = xs.size();
    for (std::size_t i = lo; i < hi; ++i) {
        auto [jlo, jhi] = radius_range(xs, xs[i], radius);
        out.dropped += static_cast<double>(V - (jhi - jlo));
        for (std::size_t j = jlo; j < jhi; ++j) {
            const double d = xs[i] - xs[j];
            acc.add(std::exp(-coef * d * d));
        }
    }
    out.sum = acc.sum;
    return out;
}

GaussPartial gaussian_triple_rows(std::span<const double> xs, double coef, double radius,
                                  std::size_t lo, std::size_t hi) {
    GaussPartial out;
    Kahan acc;
    const std::size_t V = xs.size();
    for (std::size_t i = lo; i < hi; ++i) {
        auto [jlo, jhi] = radius_range(xs, xs[i], radius);
        out.dropped += static_cast<double>(V - (jhi - jlo)) * static_cast<double>(V);
        for (std::size_t j = jlo; j < jhi; ++j) {
            const double dij = xs[i] - xs[j];
            auto [klo, khi] = radius_range(xs, xs[j], radius);
            auto [klo2, khi2] = radius_range(xs, xs[i], radius);
            const std::size_t ka = std::max(klo, klo2);
            const std::size_t kb = std::min(khi, khi2);
            out.dropped += static_cast<double>(V - (kb > ka ? kb - ka : 0));
            for (std::size_t k = ka; k < kb; ++k) {
                const double djk = xs[j] - xs[k];
                const double dki = xs[k] - xs[i];
                acc.add(std::exp(-coef * (dij * dij + djk * djk + dki * dki)));
            }
        }
    }
    out.sum = acc.sum;
    return out;
}

} // namespace

double gaussian_pair_sum_serial(std::span<const double> xs, double coef, double trunc_bound,
                                double* dropped_mass_bound) {
    const double radius = std::sqrt(trunc_bound / coef);
    GaussPartial p = gaussian_pair_rows(xs, coef, radius, 0, xs.size());
    const double w = 1.0 / static_cast<double>(xs.size());
    if (dropped_mass_bound) *dropped_mass_bound = p.dropped * w * w * std::exp(-trunc_bound);
    return p.sum * w * w;
}

double gaussian_pair_sum_omp(std::span<const double> xs, double coef, double trunc_bound,
                             double* dropped_mass_bound) {
    constexpr std::size_t chunk_rows = 64;
    const std::size_t n_chunks = (xs.size() + chunk_rows - 1) / chunk_rows;
    const double radius = std::sqrt(trunc_bound / coef);
    std::vector<GaussPartial> partial(n_chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk_rows;
        const std::size_t hi = std::min(lo + chunk_rows, xs.size());
        partial[static_cast<std::size_t>(c)] = gaussian_pair_rows(xs, coef, radius, lo, hi);
    }
    Kahan sum;
    double dropped = 0.0;
    for (const GaussPartial& p : partial) {
        sum.add(p.sum);
        dropped += p.dropped;
    }
    const double w = 1.0 / static_cast<double>(xs.size());
    if (dropped_mass_bound) *dropped_mass_bound = dropped * w * w * std::exp(-trunc_bound);
    return sum.sum * w * w;
}

double gaussian_triple_sum_serial(std::span<const double> xs, double coef, double trunc_bound,
                                  double* dropped_mass_bound) {
    const double radius = std::sqrt(trunc_bound / coef);
    GaussPartial p = gaussian_triple_rows(xs, coef, radius, 0, xs.size());
    const double w = 1.0 / static_cast<double>(xs.size());
    if (dropped_mass_bound) *dropped_mass_bound = p.dropped * w * w * w * std::exp(-trunc_bound);
    return p.sum * w * w * w;
}

double gaussian_triple_sum_omp(std::span<const double> xs, double coef, double trunc_bound,
                               double* dropped_mass_bound) {
    constexpr std::size_t chunk_rows = 32;
    const std::size_t n_chunks = (xs.size() + chunk_rows - 1) / chunk_rows;
    const double radius = std::sqrt(trunc_bound / coef);
    std::vector<GaussPartial> partial(n_chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk_rows;
        const std::size_t hi = std::min(lo + chunk_rows, xs.size());
        partial[static_cast<std::size_t>(c)] = gaussian_triple_rows(xs, coef, radius, lo, hi);
    }
    Kahan sum;
    double dropped = 0.0;
    for (const GaussPartial& p : partial) {
        sum.add(p.sum);
        dropped += p.dropped;
    }
    const double w = 1.0 / static_cast<double>(xs.size());
    if (dropped_mass_bound) *dropped_mass_bound = dropped * w * w * w * std::exp(-trunc_bound);
    return sum.sum * w * w * w;
}

namespace {

// Digits of the flattened grid index: digit(alpha, j) for alpha in [2, n].
struct GridDigits {
    std::vector<long> d; // (n-1)*D entries
    int D;
    long digit(int alpha, int j) const { return alpha < 2 ? 0 : d[(alpha - 2) * D + j]; }
};

double torus_grid_value(std::span<const double> p, int n, double m,
                        std::span<const cplx> phases, long G, const GridDigits& dig) {
    const int D = dig.D;
    double log_mod = 0.0;
    double phase = 0.0;
    for (int alpha = 1; alpha <= n; ++alpha) {
        const int nxt_alpha = alpha == n ? 1 : alpha + 1;
        cplx z(0.0, 0.0);
        for (int j = 0; j < D; ++j) {
            long diff = dig.digit(nxt_alpha, j) - dig.digit(alpha, j);
            diff %= G;
            if (diff < 0) diff += G;
            z += p[j] * phases[static_cast<std::size_t>(diff)];
        }
        z += p[D]; // theta_D = 0 on every copy
        const double a = std::abs(z);
        if (a == 0.0) return 0.0;
        log_mod += std::log(a);
        phase += std::arg(z);
    }
    return std::exp(m * log_mod) * std::cos(m * phase);
}

} // namespace

double torus_grid_mean_serial(std::span<const double> p, int n, double m, long grid_points) {
    if (n < 2) throw std::invalid_argument("torus_grid_mean: n >= 2");
    const int D = static_cast<int>(p.size()) - 1;
    const int dims = (n - 1) * D;
    const long G = grid_points;
    std::vector<cplx> phases(static_cast<std::size_t>(G));
    for (long g = 0; g < G; ++g)
        phases[static_cast<std::size_t>(g)] =
            std::polar(1.0, 2.0 * std::numbers::pi * g / static_cast<double>(G));
    long long total = 1;
    for (int d = 0; d < dims; ++d) total *= G;
    GridDigits dig{std::vector<long>(static_cast<std::size_t>(dims), 0), D};
    Kahan acc;
    for (long long flat = 0; flat < total; ++flat) {
        long long rest = flat;
        for (int d = 0; d < dims; ++d) {
            dig.d[static_cast<std::size_t>(d)] = static_cast<long>(rest % G);
            rest /= G;
        }
        acc.add(torus_grid_value(p, n, m, phases, G, dig));
    }
    return acc.sum / static_cast<double>(total);
}

double torus_grid_mean_omp(std::span<const double> p, int n, double m, long grid_points) {
    if (n < 2) throw std::invalid_argument("torus_grid_mean: n >= 2");
    const int D = static_cast<int>(p.size()) - 1;
    const int dims = (n - 1) * D;
    const long G = grid_points;
    std::vector<cplx> phases(static_cast<std::size_t>(G));
    for (long g = 0; g < G; ++g)
        phases[static_cast<std::size_t>(g)] =
            std::polar(1.0, 2.0 * std::numbers::pi * g / static_cast<double>(G));
    long long total = 1;
    for (int d = 0; d < dims; ++d) total *= G;

    constexpr long long chunk = 1 << 14;
    const long long n_chunks = (total + chunk - 1) / chunk;
    std::vector<double> partial(static_cast<std::size_t>(n_chunks), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < n_chunks; ++c) {
        const long long lo = c * chunk;
        const long long hi = std::min(lo + chunk, total);
        GridDigits dig{std::vector<long>(static_cast<std::size_t>(dims), 0), D};
        Kahan acc;
        for (long long flat = lo; flat < hi; ++flat) {
            long long rest = flat;
            for (int d = 0; d < dims; ++d) {
                dig.d[static_cast<std::size_t>(d)] = static_cast<long>(rest % G);
                rest /= G;
            }
            acc.add(torus_grid_value(p, n, m, phases, G, dig));
        }
        partial[static_cast<std::size_t>(c)] = acc.sum;
    }
    Kahan totalacc;
    for (double x : partial) totalacc.add(x);
    return totalacc.sum / static_cast<double>(total);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over a stream-salted seed
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

constexpr long long mc_chunk_size = 4096;

McAccumulation mc_chunk(const McDraw& draw, long long lo, long long hi, std::uint64_t seed,
                        long long chunk_index) {
    std::mt19937_64 rng(derive_stream_seed(seed, static_cast<std::uint64_t>(chunk_index)));
    McAccumulation acc;
    for (long long i = lo; i < hi; ++i) {
        const double x = draw(rng);
        acc.sum += x;
        acc.sum_sq += x * x;
        ++acc.count;
    }
    return acc;
}

} // namespace

McAccumulation mc_accumulate_serial(const McDraw& draw, long long num_samples,
                                    std::uint64_t seed) {
    McAccumulation total;
    const long long n_chunks = (num_samples + mc_chunk_size - 1) / mc_chunk_size;
    for (long long c = 0; c < n_chunks; ++c) {
        const long long lo = c * mc_chunk_size;
        const long long hi = std::min(lo + mc_chunk_size, num_samples);
        McAccumulation part = mc_chunk(draw, lo, hi, seed, c);
        total.sum += part.sum;
        total.sum_sq += part.sum_sq;
        total.count += part.count;
    }
    return total;
}

McAccumulation mc_accumulate_omp(const McDraw& draw, long long num_samples, std::uint64_t seed) {
    const long long n_chunks = (num_samples + mc_chunk_size - 1) / mc_chunk_size;
    std::vector<McAccumulation> partial(static_cast<std::size_t>(n_chunks));
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < n_chunks; ++c) {
        const long long lo = c * mc_chunk_size;
        const long long hi = std::min(lo + mc_chunk_size, num_samples);
        partial[static_cast<std::size_t>(c)] = mc_chunk(draw, lo, hi, seed, c);
    }
    McAccumulation total;
    for (const McAccumulation& part : partial) {
        total.sum += part.sum;
        total.sum_sq += part.sum_sq;
        total.count += part.count;
    }
    return total;
}

namespace {

struct DickePartial {
    Kahan sum1, sum_llog;
    std::vector<Kahan> sum_pow;
    double max_log = neg_inf;
    long long entries = 0;
};

// Patterns with outer digits fixed: loop the last free species and read the
// dependent one from the remainder.
void dicke_inner(const DickeWindow& win, std::span<const double> exponents,
                 const std::vector<long long>& outer, long long outer_sum, DickePartial& acc) {
    const std::size_t Dm1 = win.lo.size() - 2; // index of last free species
    const std::size_t Dd = win.lo.size() - 1;  // dependent species
    const long long rem_total = win.m - outer_sum;
    long long klo = std::max(win.lo[Dm1], rem_total - win.hi[Dd]);
    long long khi = std::min(win.hi[Dm1], rem_total - win.lo[Dd]);
    double base = win.const_term;
    for (std::size_t j = 0; j + 2 < win.lo.size(); ++j)
        base += win.tables[j][static_cast<std::size_t>(outer[j] - win.lo[j])];
    for (long long k = klo; k <= khi; ++k) {
        const long long kd = rem_total - k;
        const double ll = base + win.tables[Dm1][static_cast<std::size_t>(k - win.lo[Dm1])] +
                          win.tables[Dd][static_cast<std::size_t>(kd - win.lo[Dd])];
        ++acc.entries;
        if (ll > acc.max_log) acc.max_log = ll;
        if (ll < -745.0) continue; // below exp underflow; contributes nothing
        const double lam = std::exp(ll);
        acc.sum1.add(lam);
        acc.sum_llog.add(lam * ll);
        for (std::size_t e = 0; e < exponents.size(); ++e) {
            const double n = exponents[e];
            double val;
            if (n == 2.0) val = lam * lam;
            else if (n == 3.0) val = lam * lam * lam;
            else val = std::exp(n * ll);
            acc.sum_pow[e].add(val);
        }
    }
}

DickeSums dicke_sums_over_outer(const DickeWindow& win, std::span<const double> exponents,
                                long long outer_lo, long long outer_hi,
                                const std::vector<long long>& outer_ranges) {
    DickePartial acc;
    acc.sum_pow.resize(exponents.size());
    const std::size_t n_outer = outer_ranges.size();
    std::vector<long long> outer(n_outer, 0);
    for (long long flat = outer_lo; flat < outer_hi; ++flat) {
        long long rest = flat;
        long long outer_sum = 0;
        for (std::size_t j = 0; j < n_outer; ++j) {
            outer[j] = win.lo[j] + rest % outer_ranges[j];
            rest /= outer_ranges[j];
            outer_sum += outer[j];
        }
        dicke_inner(win, exponents, outer, outer_sum, acc);
    }
    DickeSums out;
    out.sum1 = acc.sum1.sum;
    out.sum_llog = acc.sum_llog.sum;
    out.max_log = acc.max_log;
    out.entries = acc.entries;
    out.sum_pow.resize(exponents.size());
    for (std::size_t e = 0; e < exponents.size(); ++e) out.sum_pow[e] = acc.sum_pow[e].sum;
    return out;
}

void merge(DickeSums& total, const DickeSums& part) {
    total.sum1 += part.sum1;
    total.sum_llog += part.sum_llog;
    total.max_log = std::max(total.max_log, part.max_log);
    total.entries += part.entries;
    for (std::size_t e = 0; e < total.sum_pow.size(); ++e) total.sum_pow[e] += part.sum_pow[e];
}

std::vector<long long> outer_range_sizes(const DickeWindow& win) {
    std::vector<long long> ranges;
    for (std::size_t j = 0; j + 2 < win.lo.size(); ++j)
        ranges.push_back(win.hi[j] - win.lo[j] + 1);
    return ranges;
}

} // namespace

DickeSums dicke_window_sums_serial(const DickeWindow& win, std::span<const double> exponents) {
    const std::vector<long long> ranges = outer_range_sizes(win);
    long long outer_total = 1;
    for (long long r : ranges) outer_total *= r;
    return dicke_sums_over_outer(win, exponents, 0, outer_total, ranges);
}

DickeSums dicke_window_sums_omp(const DickeWindow& win, std::span<const double> exponents) {
    const std::vector<long long> ranges = outer_range_sizes(win);
    long long outer_total = 1;
    for (long long r : ranges) outer_total *= r;
    constexpr long long chunk = 16;
    const long long n_chunks = (outer_total + chunk - 1) / chunk;
    std::vector<DickeSums> partial(static_cast<std::size_t>(n_chunks));
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < n_chunks; ++c) {
        const long long lo = c * chunk;
        const long long hi = std::min(lo + chunk, outer_total);
        partial[static_cast<std::size_t>(c)] = dicke_sums_over_outer(win, exponents, lo, hi, ranges);
    }
    DickeSums total;
    total.max_log = neg_inf;
    total.sum_pow.assign(exponents.size(), 0.0);
    for (const DickeSums& part : partial) merge(total, part);
    return total;
}

} // namespace spinent::kernels
