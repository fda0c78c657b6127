#include "spinent/moment.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "spinent/errors.hpp"
#include "spinent/kernels.hpp"

namespace spinent {

namespace {

void require_integer_n(double n, const char* who) {
    if (!(n >= 2.0) || n != std::floor(n))
        throw std::invalid_argument(std::string(who) + ": integer n >= 2 required");
}

kernels::AtomsView flatten(const DiscreteMeasure& m, std::vector<cplx>& comps,
                           std::vector<double>& weights) {
    const int width = m.dim_d() + 1;
    comps.resize(m.atoms.size() * static_cast<std::size_t>(width));
    weights.resize(m.atoms.size());
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        weights[i] = m.atoms[i].weight;
        for (int j = 0; j < width; ++j)
            comps[i * static_cast<std::size_t>(width) + static_cast<std::size_t>(j)] =
                m.atoms[i].point[static_cast<std::size_t>(j)];
    }
    return kernels::AtomsView{comps.data(), weights.data(), m.atoms.size(), m.dim_d()};
}

// Dense transfer matrix T_{vw} = w_w (v^dag w)^m with log-domain entry
// evaluation and flush-to-zero below the floor.
Eigen::MatrixXcd build_transfer(const DiscreteMeasure& m, double mm, double log_floor) {
    const auto V = static_cast<Eigen::Index>(m.atoms.size());
    Eigen::MatrixXcd T(V, V);
    for (Eigen::Index v = 0; v < V; ++v) {
        for (Eigen::Index w = 0; w < V; ++w) {
            if (v == w) { // (v^dag v)^m is exactly 1 for unit points
                T(v, w) = m.atoms[static_cast<std::size_t>(w)].weight;
                continue;
            }
            const cplx g = overlap(m.atoms[static_cast<std::size_t>(v)].point,
                                   m.atoms[static_cast<std::size_t>(w)].point);
            const double a = std::abs(g);
            if (a == 0.0) {
                T(v, w) = 0.0;
                continue;
            }
            const double lm = mm * std::log(a);
            T(v, w) = lm < log_floor
                          ? cplx(0.0, 0.0)
                          : std::polar(std::exp(lm) * m.atoms[static_cast<std::size_t>(w)].weight,
                                       mm * std::arg(g));
        }
    }
    return T;
}

} // namespace

double discrete_moment_value(const DiscreteMeasure& measure, int n, double m,
                             const EngineBudget& budget) {
    if (n < 2) throw std::invalid_argument("discrete_moment_value: n >= 2");
    if (m < 0.0) throw std::invalid_argument("discrete_moment_value: m >= 0");

    double moment;
    if (n == 2) {
        std::vector<cplx> comps;
        std::vector<double> weights;
        const kernels::AtomsView view = flatten(measure, comps, weights);
        moment = kernels::discrete_pair_sum_omp(view, m, budget.log_floor);
    } else {
        if (static_cast<double>(measure.atoms.size()) > budget.max_transfer_atoms_dense)
            throw budget_error("discrete_moment_value: atom count exceeds dense transfer budget");
        const Eigen::MatrixXcd T = build_transfer(measure, m, budget.log_floor);
        Eigen::MatrixXcd P = T;
        for (int k = 1; k < n; ++k) P = (P * T).eval();
        const cplx tr = P.trace();
        if (std::abs(tr.imag()) > 1e-10 * std::max(1e-300, std::abs(tr.real())))
            throw numerical_error("discrete_moment_value: trace not real");
        moment = tr.real();
    }
    if (!(moment > 0.0))
        throw numerical_error("discrete_moment_value: nonpositive moment");
    return moment;
}

MomentEstimate moment_discrete(const DiscreteMeasure& measure, const RenyiQuery& q,
                               const EngineBudget& budget) {
    require_integer_n(q.n, "moment_discrete");
    if (q.m < 0) throw std::invalid_argument("moment_discrete: m >= 0");
    MomentEstimate est;
    est.log_moment = std::log(discrete_moment_value(measure, static_cast<int>(q.n),
                                                    static_cast<double>(q.m), budget));
    est.method = MomentMethod::exact_transfer;
    return est;
}

double saturation_value(const DiscreteMeasure& measure, double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("saturation_value: n >= 1");
    if (std::isinf(n)) return single_copy_discrete(measure);
    if (n == 1.0) {
        double s = 0.0;
        for (const Atom& a : measure.atoms) s -= a.weight * std::log(a.weight);
        return s;
    }
    double sum = 0.0;
    for (const Atom& a : measure.atoms) sum += std::pow(a.weight, n);
    return std::log(sum) / (1.0 - n);
}

double single_copy_discrete(const DiscreteMeasure& measure) {
    double wmax = 0.0;
    for (const Atom& a : measure.atoms) wmax = std::max(wmax, a.weight);
    return -std::log(wmax);
}

MomentEstimate moment_torus_quadrature(const TorusMeasure& measure, const RenyiQuery& q,
                                       long grid_points, const EngineBudget& budget) {
    require_integer_n(q.n, "moment_torus_quadrature");
    if (grid_points < 1) throw std::invalid_argument("moment_torus_quadrature: grid_points >= 1");
    const int n = static_cast<int>(q.n);
    const int D = measure.dim_d();
    const double evals = std::pow(static_cast<double>(grid_points),
                                  static_cast<double>((n - 1) * D));
    if (evals > budget.max_grid_evaluations)
        throw budget_error("moment_torus_quadrature: grid exceeds work budget");

    const double moment = kernels::torus_grid_mean_omp(measure.p, n,
                                                       static_cast<double>(q.m), grid_points);
    if (!(moment > 0.0))
        throw numerical_error("moment_torus_quadrature: nonpositive moment");
    MomentEstimate est;
    est.log_moment = std::log(moment);
    est.method = MomentMethod::quadrature;
    est.samples_used = static_cast<long long>(evals);
    return est;
}

MomentEstimate moment_mc(const SpinMeasure& measure, const RenyiQuery& q,
                         long long num_samples, std::uint64_t seed) {
    require_integer_n(q.n, "moment_mc");
    if (num_samples <= 0) throw std::invalid_argument("moment_mc: need positive sample count");
    const int n = static_cast<int>(q.n);
    const double m = static_cast<double>(q.m);

    // The exact integral is real by exchange symmetry of the replica measure,
    // so each draw is projected onto its real part.
    kernels::McDraw draw = [&measure, n, m](std::mt19937_64& rng) -> double {
        std::vector<ProjectivePoint> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int alpha = 0; alpha < n; ++alpha) pts.push_back(sample(measure, rng));
        return log_chain_product(pts, m).real();
    };
    const kernels::McAccumulation acc = kernels::mc_accumulate_omp(draw, num_samples, seed);

    const double mean = acc.sum / static_cast<double>(acc.count);
    double var = 0.0;
    if (acc.count > 1) {
        var = (acc.sum_sq - acc.sum * acc.sum / static_cast<double>(acc.count)) /
              static_cast<double>(acc.count - 1);
        var = std::max(var, 0.0);
    }
    if (!(mean > 0.0))
        throw numerical_error("moment_mc: nonpositive moment estimate; more samples needed");
    MomentEstimate est;
    est.log_moment = std::log(mean);
    est.std_error = std::sqrt(var / static_cast<double>(acc.count));
    est.method = MomentMethod::monte_carlo;
    est.samples_used = acc.count;
    return est;
}

Entropy renyi_from_moment(const MomentEstimate& est, double n) {
    if (!(n > 1.0)) throw std::invalid_argument("renyi_from_moment: n > 1");
    Entropy out;
    out.value = est.log_moment / (1.0 - n);
    out.std_error = est.std_error / ((n - 1.0) * std::exp(est.log_moment));
    return out;
}

} // namespace spinent
