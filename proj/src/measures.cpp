#include "spinent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "spinent/errors.hpp"
#include "spinent/quadrature.hpp"

namespace spinent {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double half_pi = 0.5 * std::numbers::pi;
} // namespace

bool TorusMeasure::has_zero_component() const {
    return std::any_of(p.begin(), p.end(), [](double x) { return x == 0.0; });
}

TorusMeasure TorusMeasure::reduced() const {
    TorusMeasure out;
    for (double x : p)
        if (x > 0.0) out.p.push_back(x);
    return out;
}

ProjectivePoint great_circle_point(double x) {
    const double inv = 1.0 / std::sqrt(2.0);
    return ProjectivePoint::canonicalize(
        {cplx(inv, 0.0), std::polar(inv, std::numbers::pi * x)});
}

IfsMeasure cantor_measure() {
    IfsMeasure m;
    m.ratio = 1.0 / 3.0;
    m.offsets = {0.0, 2.0 / 3.0};
    m.embed = great_circle_point;
    m.dim = 1;
    return m;
}

namespace {

void validate_discrete(const DiscreteMeasure& m) {
    if (m.atoms.empty()) throw std::invalid_argument("DiscreteMeasure: no atoms");
    double sum = 0.0;
    for (const Atom& a : m.atoms) {
        if (!(a.weight > 0.0))
            throw std::invalid_argument("DiscreteMeasure: weights must be positive");
        if (a.point.dim_d() != m.dim_d())
            throw std::invalid_argument("DiscreteMeasure: mixed dimensions");
        sum += a.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw normalization_error("DiscreteMeasure: weights do not sum to 1", sum - 1.0);
    for (std::size_t i = 0; i < m.atoms.size(); ++i)
        for (std::size_t j = i + 1; j < m.atoms.size(); ++j)
            if (fs_distance(m.atoms[i].point, m.atoms[j].point) <= 1e-9)
                throw std::invalid_argument("DiscreteMeasure: coincident atoms");
}

void validate_torus(const TorusMeasure& m) {
    if (m.p.size() < 2) throw std::invalid_argument("TorusMeasure: need D+1 >= 2 entries");
    double sum = 0.0;
    for (double x : m.p) {
        if (x < 0.0) throw std::invalid_argument("TorusMeasure: negative probability");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw normalization_error("TorusMeasure: probabilities do not sum to 1", sum - 1.0);
}

void validate_density(const DensityMeasure& m) {
    if (m.dim < 1) throw std::invalid_argument("DensityMeasure: D >= 1");
    if (!m.density) throw std::invalid_argument("DensityMeasure: missing evaluator");
    if (m.normalization_checked) {
        QuadratureResult q = cp_integrate(m.dim, m.density, 1e-8, 16,
                                          m.dim == 1 ? 256 : 64);
        if (std::abs(q.value - 1.0) > 1e-3)
            throw normalization_error("DensityMeasure: density does not integrate to 1",
                                      q.value - 1.0);
    }
}

void validate_ifs(const IfsMeasure& m) {
    if (!(m.ratio > 0.0 && m.ratio < 1.0))
        throw std::invalid_argument("IfsMeasure: ratio in (0,1)");
    if (m.offsets.empty()) throw std::invalid_argument("IfsMeasure: no branches");
    if (!m.embed) throw std::invalid_argument("IfsMeasure: missing embedding");
    if (std::log(static_cast<double>(m.offsets.size())) / std::log(1.0 / m.ratio) > 1.0 + 1e-12)
        throw std::invalid_argument("IfsMeasure: similarity dimension exceeds 1");
    // Open-set condition: branch images of [0,1] must be pairwise disjoint.
    std::vector<double> lo(m.offsets.size());
    for (std::size_t b = 0; b < m.offsets.size(); ++b) lo[b] = m.offsets[b];
    std::sort(lo.begin(), lo.end());
    for (std::size_t b = 0; b + 1 < lo.size(); ++b)
        if (lo[b] + m.ratio > lo[b + 1])
            throw std::invalid_argument("IfsMeasure: branch images overlap");
    if (lo.back() + m.ratio > 1.0 + 1e-12 || lo.front() < 0.0)
        throw std::invalid_argument("IfsMeasure: branch images leave [0,1]");
}

} // namespace

void validate(const SpinMeasure& measure) {
    std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiscreteMeasure>) validate_discrete(m);
        else if constexpr (std::is_same_v<T, TorusMeasure>) validate_torus(m);
        else if constexpr (std::is_same_v<T, DensityMeasure>) validate_density(m);
        else validate_ifs(m);
    }, measure);
}

namespace {

ProjectivePoint sample_discrete(const DiscreteMeasure& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    double acc = 0.0;
    for (const Atom& a : m.atoms) {
        acc += a.weight;
        if (u < acc) return a.point;
    }
    return m.atoms.back().point;
}

ProjectivePoint sample_torus(const TorusMeasure& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, two_pi);
    const int D = m.dim_d();
    std::vector<cplx> comps(D + 1);
    for (int j = 0; j < D; ++j) comps[j] = std::polar(std::sqrt(m.p[j]), unif(rng));
    comps[D] = cplx(std::sqrt(m.p[D]), 0.0);
    return ProjectivePoint::canonicalize(comps);
}

ProjectivePoint sample_density(const DensityMeasure& m, std::mt19937_64& rng) {
    if (!(m.envelope > 0.0))
        throw std::invalid_argument("DensityMeasure: envelope bound required for sampling");
    const int D = m.dim;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SphericalChart chart;
    chart.theta.assign(D, 0.0);
    chart.phi.assign(D, 0.0);
    const double vol_max = std::pow(2.0, D);
    for (int tries = 0; tries < 100000000; ++tries) {
        for (int d = 0; d < D; ++d) chart.theta[d] = two_pi * u01(rng);
        for (int d = 0; d < D; ++d) chart.phi[d] = half_pi * u01(rng);
        const double accept =
            volume_density(chart) / vol_max * m.density(chart) / m.envelope;
        if (u01(rng) < accept) return chart_to_point(chart);
    }
    throw numerical_error("DensityMeasure: rejection sampling failed to accept");
}

ProjectivePoint sample_ifs(const IfsMeasure& m, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, m.offsets.size() - 1);
    double x = 0.0;
    // Depth-k composition applied to x0 = 0, innermost branch first.
    for (int d = 0; d < m.sample_depth; ++d) x = m.ratio * x + m.offsets[pick(rng)];
    return m.embed(x);
}

} // namespace

ProjectivePoint sample(const SpinMeasure& measure, std::mt19937_64& rng) {
    return std::visit([&rng](const auto& m) -> ProjectivePoint {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiscreteMeasure>) return sample_discrete(m, rng);
        else if constexpr (std::is_same_v<T, TorusMeasure>) return sample_torus(m, rng);
        else if constexpr (std::is_same_v<T, DensityMeasure>) return sample_density(m, rng);
        else return sample_ifs(m, rng);
    }, measure);
}

std::vector<double> ifs_parameters_at_level(const IfsMeasure& measure, int k,
                                            std::size_t atom_cap) {
    if (k < 0) throw std::invalid_argument("atoms_at_level: k >= 0");
    const std::size_t B = measure.branches();
    double count = std::pow(static_cast<double>(B), k);
    if (count > static_cast<double>(atom_cap))
        throw budget_error("atoms_at_level: branches^k exceeds atom cap");
    std::vector<double> xs{0.0};
    for (int level = 0; level < k; ++level) {
        std::vector<double> next;
        next.reserve(xs.size() * B);
        for (double b : measure.offsets)
            for (double x : xs) next.push_back(measure.ratio * x + b);
        xs.swap(next);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

DiscreteMeasure atoms_at_level(const IfsMeasure& measure, int k, std::size_t atom_cap) {
    const std::vector<double> xs = ifs_parameters_at_level(measure, k, atom_cap);
    DiscreteMeasure out;
    out.atoms.reserve(xs.size());
    const double w = 1.0 / static_cast<double>(xs.size());
    for (double x : xs) out.atoms.push_back({measure.embed(x), w});
    return out;
}

double support_dimension(const SpinMeasure& measure) {
    return std::visit([](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiscreteMeasure>) {
            (void)m;
            return 0.0;
        } else if constexpr (std::is_same_v<T, TorusMeasure>) {
            return static_cast<double>(m.dim_d());
        } else if constexpr (std::is_same_v<T, DensityMeasure>) {
            return 2.0 * m.dim;
        } else {
            return std::log(static_cast<double>(m.branches())) / std::log(1.0 / m.ratio);
        }
    }, measure);
}

int measure_dim_d(const SpinMeasure& measure) {
    return std::visit([](const auto& m) { return m.dim_d(); }, measure);
}

std::string describe(const SpinMeasure& measure) {
    char buf[64];
    return std::visit([&buf](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiscreteMeasure>) {
            std::string s = "discrete D=" + std::to_string(m.dim_d());
            for (const Atom& a : m.atoms) {
                std::snprintf(buf, sizeof buf, " w=%.17g", a.weight);
                s += buf;
                for (const cplx& c : a.point.components()) {
                    std::snprintf(buf, sizeof buf, " (%.17g,%.17g)", c.real(), c.imag());
                    s += buf;
                }
            }
            return s;
        } else if constexpr (std::is_same_v<T, TorusMeasure>) {
            std::string s = "torus p=";
            for (double x : m.p) {
                std::snprintf(buf, sizeof buf, "%.17g,", x);
                s += buf;
            }
            return s;
        } else if constexpr (std::is_same_v<T, DensityMeasure>) {
            return "density D=" + std::to_string(m.dim);
        } else {
            std::string s = "ifs r=";
            std::snprintf(buf, sizeof buf, "%.17g", m.ratio);
            s += buf;
            s += " b=";
            for (double x : m.offsets) {
                std::snprintf(buf, sizeof buf, "%.17g,", x);
                s += buf;
            }
            return s;
        }
    }, measure);
}

} // namespace spinent
