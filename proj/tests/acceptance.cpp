// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. An optional argument runs a single criterion by number.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spinent/asymptotics.hpp"
#include "spinent/moment.hpp"
#include "spinent/oracles.hpp"
#include "spinent/scaling.hpp"

using namespace spinent;

namespace {

constexpr double pi = std::numbers::pi;

const ProjectivePoint e0 = ProjectivePoint::canonicalize({cplx(1, 0), cplx(0, 0)});

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

ProjectivePoint random_point(std::mt19937_64& rng, int D) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(D) + 1);
    for (cplx& z : c) z = cplx(unif(rng), unif(rng));
    return ProjectivePoint::canonicalize(c);
}

std::vector<DickeOccupation> all_occupations(int D, int N) {
    std::vector<DickeOccupation> occs;
    if (D == 1) {
        for (int a = 0; a <= N; ++a) occs.push_back({{a, N - a}});
    } else {
        for (int a = 0; a <= N; ++a)
            for (int b = 0; a + b <= N; ++b) occs.push_back({{a, b, N - a - b}});
    }
    return occs;
}

struct Outcome {
    bool spec_ok = false;       // the criterion exactly as stated
    bool documented_ok = false; // the verified true behavior (for known defects)
};

// 1. Dicke von Neumann law against the closed large-m form. The tolerance
// clause holds with orders of margin; the monotonicity clause cannot hold at
// fixed N = 1e9, where the deviation is the finite-size term m/(2N) and grows
// linearly in m (see the acceptance notes in the README).
Outcome criterion_dicke_vn(std::string& detail) {
    const DickeOccupation occ{{500000000, 500000000}};
    const TorusMeasure p{{0.5, 0.5}};
    std::vector<double> dev;
    for (long m : {1000L, 10000L, 100000L})
        dev.push_back(std::abs(dicke_renyi(occ, m, 1.0) -
                               torus_renyi_asymptotic(p, 1.0, static_cast<double>(m))));
    const bool tol_ok = dev[1] <= 0.01;
    const bool monotone = dev[0] > dev[1] && dev[1] > dev[2];
    // documented behavior: deviation = m/(2N) finite-size term, within 2x
    bool finite_size = tol_ok;
    for (int i = 0; i < 3; ++i) {
        const double expect = std::pow(10.0, 3 + i) / 2e9;
        finite_size = finite_size && dev[std::size_t(i)] < 2.0 * expect + 1e-6;
    }
    detail = fmt("dev(1e3,1e4,1e5) = %.2e, %.2e, %.2e; tol at 1e4 %s; decreasing %s "
                 "(deviation is the finite-N term m/2N)",
                 dev[0], dev[1], dev[2], tol_ok ? "ok" : "VIOLATED",
                 monotone ? "ok" : "VIOLATED");
    return {tol_ok && monotone, finite_size};
}

// 2. Dicke Renyi law at n = 2, 3 (s = 1/2) and n = 2 (s = 1).
bool criterion_dicke_renyi(std::string& detail) {
    const DickeOccupation half{{500000000, 500000000}};
    const TorusMeasure phalf{{0.5, 0.5}};
    double worst_half = 0.0;
    for (double n : {2.0, 3.0})
        worst_half = std::max(worst_half, std::abs(dicke_renyi(half, 10000, n) -
                                                   torus_renyi_asymptotic(phalf, n, 1e4)));
    const DickeOccupation third{{333333333, 333333333, 333333334}};
    const TorusMeasure pthird{{1.0 / 3, 1.0 / 3, 1.0 / 3}};
    const double dev_third =
        std::abs(dicke_renyi(third, 10000, 2.0) - torus_renyi_asymptotic(pthird, 2.0, 1e4));
    detail = fmt("s=1/2 worst dev %.2e (<= 0.01), s=1 dev %.2e (<= 0.03)", worst_half, dev_third);
    return worst_half <= 0.01 && dev_third <= 0.03;
}

// 3. n-independence of the fitted leading coefficient, D in {1, 2}.
bool criterion_universality(std::string& detail) {
    const std::vector<long> grid{1000, 3162, 10000, 31623, 100000};
    const double ns[4] = {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()};
    double worst = 0.0;
    for (int D : {1, 2}) {
        TorusMeasure p;
        p.p.assign(static_cast<std::size_t>(D) + 1, 1.0 / (D + 1));
        EngineSpec spec;
        spec.kind = EngineKind::dicke_exact;
        spec.dicke_sites = 1000000000;
        for (double n : ns) {
            const EntropyCurve curve = entropy_curve(SpinMeasure{p}, n, grid, spec);
            const ScalingFit fit = fit_log_slope(curve, 1000, 100000);
            worst = std::max(worst, std::abs(fit.dimension_estimate - D));
        }
    }
    detail = fmt("max |dim_est - D| = %.3f over n in {1,2,3,inf}, D in {1,2} (<= 0.05)", worst);
    return worst <= 0.05;
}

// 4. Gaussian determinant identity.
bool criterion_detA(std::string& detail) {
    std::mt19937_64 rng(20240809);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
        const int D = 1 + c % 4;
        const int n = 2 + c % 5;
        TorusMeasure p;
        double sum = 0.0;
        for (int j = 0; j <= D; ++j) {
            p.p.push_back(unif(rng));
            sum += p.p.back();
        }
        for (double& x : p.p) x /= sum;
        worst = std::max(worst, std::abs(detA_numeric(p, n) / detA_closed(p, n) - 1.0));
    }
    detail = fmt("max rel err %.2e over 200 cases (<= 1e-9)", worst);
    return worst <= 1e-9;
}

// 5. Saturation of finite combinations at large block size.
bool criterion_saturation(std::string& detail) {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> uw(0.1, 1.0);
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
        const int V = 2 + c % 3;
        DiscreteMeasure mu;
        while (static_cast<int>(mu.atoms.size()) < V) {
            const ProjectivePoint pt = random_point(rng, 1 + c % 2);
            bool ok = true;
            for (const Atom& a : mu.atoms)
                ok = ok && std::abs(overlap(a.point, pt)) <= 0.9;
            if (ok) mu.atoms.push_back({pt, uw(rng)});
        }
        double sum = 0.0;
        for (const Atom& a : mu.atoms) sum += a.weight;
        for (Atom& a : mu.atoms) a.weight /= sum;
        for (double n : {2.0, 3.0}) {
            const double s = renyi_from_moment(moment_discrete(mu, {n, 5000}), n).value;
            worst = std::max(worst, std::abs(s - saturation_value(mu, n)));
        }
    }
    detail = fmt("max |S_n(5000) - saturation| = %.2e over 20 measures (<= 1e-6)", worst);
    return worst <= 1e-6;
}

// 6. Finite-N convergence rate toward the thermodynamic moment. The stated
// rate 2 log c describes only the exchange-class correction ~ c^{2(N-m)},
// which dominates for N < 2m; over the stated window the single-off-diagonal
// class ~ c^N dominates and the true rate is log c per site.
Outcome criterion_convergence(std::string& detail) {
    ProductCombination pc;
    pc.coefficients = {cplx(1, 0), cplx(1, 0)};
    pc.points = {e0,
                 ProjectivePoint::canonicalize({cplx(0.5, 0), cplx(std::sqrt(3.0) / 2.0, 0)})};
    const int m = 5, n = 2;
    std::vector<double> xs, ys;
    for (long long N = m + 2; N <= m + 40; ++N) {
        pc.n_sites = N;
        xs.push_back(static_cast<double>(N));
        ys.push_back(std::log(thermo_moment_gap(pc, m, n)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    const double expected = 2.0 * std::log(0.5);
    // documented behavior: tail (N > 4m) decays at log c per site
    double tx = 0, ty = 0, txx = 0, txy = 0, tn = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 4.0 * m) continue;
        tx += xs[i];
        ty += ys[i];
        txx += xs[i] * xs[i];
        txy += xs[i] * ys[i];
        tn += 1;
    }
    const double tail = (tn * txy - tx * ty) / (tn * txx - tx * tx);
    detail = fmt("fitted rate %.4f vs 2 log(1/2) = %.4f (|ratio-1| = %.2f, need <= 0.10); "
                 "tail rate %.4f vs log(1/2) = %.4f per site (single-off-diagonal class)",
                 slope, expected, std::abs(slope / expected - 1.0), tail, std::log(0.5));
    return {std::abs(slope / expected - 1.0) <= 0.10,
            std::abs(tail / std::log(0.5) - 1.0) <= 0.10};
}

// 7. Exact oracles against brute-force partial traces.
bool criterion_oracles(std::string& detail) {
    double worst_spec = 0.0;
    for (int D = 1; D <= 2; ++D)
        for (int N = 2; N <= 10; ++N) {
            if (std::pow(D + 1.0, N) > 65536.0) continue;
            for (const DickeOccupation& occ : all_occupations(D, N))
                for (int m = 1; m < N; ++m) {
                    const Eigen::VectorXcd state = symmetrize_dicke(occ);
                    std::vector<double> brute =
                        brute_force_reduced_spectrum(state, D + 1, N, m);
                    std::vector<double> hyper;
                    for (const SpectrumEntry& e : dicke_spectrum(occ, m).entries)
                        hyper.push_back(e.lambda);
                    std::sort(hyper.begin(), hyper.end(), std::greater<double>());
                    brute.resize(hyper.size(), 0.0);
                    for (std::size_t i = 0; i < hyper.size(); ++i)
                        worst_spec = std::max(worst_spec, std::abs(hyper[i] - brute[i]));
                }
        }

    std::mt19937_64 rng(31415);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst_pc = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const int V = 2 + rep % 2;
        const long long N = 10 + rep % 3;
        ProductCombination pc;
        pc.n_sites = N;
        for (int v = 0; v < V; ++v) {
            pc.points.push_back(random_point(rng, 1));
            pc.coefficients.emplace_back(unif(rng), unif(rng));
        }
        bool close = false;
        for (int i = 0; i < V; ++i)
            for (int j = i + 1; j < V; ++j)
                close = close || std::abs(overlap(pc.points[std::size_t(i)],
                                                  pc.points[std::size_t(j)])) > 0.98;
        if (close) continue;
        long long dim = 1;
        for (long long i = 0; i < N; ++i) dim *= 2;
        Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
        for (std::size_t v = 0; v < pc.points.size(); ++v)
            for (long long idx = 0; idx < dim; ++idx) {
                cplx amp = pc.coefficients[v];
                long long rest = idx;
                for (long long s = 0; s < N; ++s) {
                    amp *= pc.points[v][static_cast<std::size_t>(rest % 2)];
                    rest /= 2;
                }
                state(idx) += amp;
            }
        for (int n : {2, 3})
            for (int m : {2, 5, 9}) {
                const std::vector<double> lam =
                    brute_force_reduced_spectrum(state, 2, static_cast<int>(N), m);
                double trn = 0.0;
                for (double l : lam) trn += std::pow(l, n);
                worst_pc =
                    std::max(worst_pc, std::abs(product_combination_moment(pc, m, n) - trn));
            }
    }
    detail = fmt("spectrum max err %.2e, combination-moment max err %.2e (<= 1e-10)", worst_spec,
                 worst_pc);
    return worst_spec <= 1e-10 && worst_pc <= 1e-10;
}

// 8. Basis inversion: phase-sum reconstruction equals symmetrization.
bool criterion_reconstruction(std::string& detail) {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> unif(0.2, 1.0);
    double worst = 0.0;
    int cases = 0;
    for (int D = 1; D <= 2; ++D)
        for (int N = 1; N <= 6; ++N)
            for (const DickeOccupation& occ : all_occupations(D, N))
                for (int rep = 0; rep < 3; ++rep) {
                    std::vector<double> a(static_cast<std::size_t>(D) + 1);
                    double norm = 0.0;
                    for (double& x : a) {
                        x = unif(rng);
                        norm += x * x;
                    }
                    for (double& x : a) x /= std::sqrt(norm);
                    const Eigen::VectorXcd diff =
                        reconstruct_dicke(occ, a) - symmetrize_dicke(occ);
                    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
                    ++cases;
                }
    detail = fmt("max abs err %.2e over %d reconstructions (<= 1e-10)", worst, cases);
    return worst <= 1e-10;
}

// 9. Cantor dimension from the exact-overlap transfer curve + Q_m recursion.
bool criterion_cantor(std::string& detail) {
    const IfsMeasure cantor = cantor_measure();
    EngineSpec spec;
    spec.kind = EngineKind::ifs_transfer;
    spec.ifs_level = 12;
    const std::vector<long> grid{1000, 3162, 10000, 31623, 100000};
    const EntropyCurve curve = entropy_curve(SpinMeasure{cantor}, 2.0, grid, spec);
    const ScalingFit fit = fit_log_slope(curve, 1000, 100000);
    const double d_cantor = std::log(2.0) / std::log(3.0);

    const std::vector<double> ms{10000.0, 21544.0, 46416.0, 100000.0};
    const RecursionReport rep =
        verify_cantor_recursion(cantor, 12, 2, ms, QmKernel::exact_overlap);

    detail = fmt("dim_est %.4f vs %.4f (|diff| = %.3f <= 0.05); recursion max dev %.3f (<= 0.10)",
                 fit.dimension_estimate, d_cantor, std::abs(fit.dimension_estimate - d_cantor),
                 rep.max_deviation);
    return std::abs(fit.dimension_estimate - d_cantor) <= 0.05 && rep.max_deviation <= 0.10;
}

// 10. Quadrature vs asymptote vs Monte Carlo on the half-filled torus.
bool criterion_engines(std::string& detail) {
    const TorusMeasure half{{0.5, 0.5}};
    const MomentEstimate quad = moment_torus_quadrature(half, {2.0, 200}, 4096);
    const double s_quad = renyi_from_moment(quad, 2.0).value;
    const double s_asym = torus_renyi_asymptotic(half, 2.0, 200.0);
    const double dev_asym = std::abs(s_quad - s_asym);

    const MomentEstimate mc = moment_mc(SpinMeasure{half}, {2.0, 200}, 1000000, 20240809);
    const double gap = std::abs(std::exp(mc.log_moment) - std::exp(quad.log_moment));
    detail = fmt("quadrature vs asymptote dev %.4f (<= 0.02); MC gap %.2e vs 4 sigma = %.2e",
                 dev_asym, gap, 4.0 * mc.std_error);
    return dev_asym <= 0.02 && gap <= 4.0 * mc.std_error;
}

// 11. Geometry: metric axioms, determinant identity, twist equality.
bool criterion_geometry(std::string& detail) {
    std::mt19937_64 rng(1618);
    double worst_tri = 0.0;
    for (int c = 0; c < 10000; ++c) {
        const int D = 1 + c % 3;
        const ProjectivePoint a = random_point(rng, D);
        const ProjectivePoint b = random_point(rng, D);
        const ProjectivePoint d = random_point(rng, D);
        worst_tri =
            std::max(worst_tri, fs_distance(a, d) - fs_distance(a, b) - fs_distance(b, d));
        if (fs_distance(a, b) != fs_distance(b, a)) return false;
    }

    std::uniform_real_distribution<double> uphi(0.0, 0.5 * pi);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * pi);
    double worst_det = 0.0;
    int det_checked = 0;
    while (det_checked < 1000) {
        const int D = 1 + det_checked % 4;
        SphericalChart chart;
        for (int d = 0; d < D; ++d) {
            chart.theta.push_back(uth(rng));
            chart.phi.push_back(uphi(rng));
        }
        const double vol2 = volume_density(chart) * volume_density(chart);
        if (vol2 < 1e-4) continue; // degenerate boundary: relative check is conditioning-limited
        worst_det = std::max(worst_det, std::abs(metric_at(chart).determinant() / vol2 - 1.0));
        ++det_checked;
    }

    double worst_twist = 0.0;
    for (int c = 0; c < 25; ++c) {
        const int n = 2 + c % 2;
        std::vector<ProjectivePoint> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, 1 + c % 2));
        const int m = 1 + c % 3;
        worst_twist = std::max(
            worst_twist, std::abs(twist_expectation(pts, m) - twist_expectation_brute(pts, m)));
    }
    detail = fmt("triangle slack %.1e (<= 1e-9), det ratio err %.1e (<= 1e-9), twist err %.1e "
                 "(<= 1e-12)",
                 worst_tri, worst_det, worst_twist);
    return worst_tri <= 1e-9 && worst_det <= 1e-9 && worst_twist <= 1e-12;
}

// Criteria with a plain bool result have no documented deviation.
using SimpleFn = bool (*)(std::string&);
using OutcomeFn = Outcome (*)(std::string&);

struct Criterion {
    int id;
    const char* name;
    SimpleFn simple;
    OutcomeFn outcome;
};

const Criterion criteria[] = {
    {1, "Dicke von Neumann law", nullptr, criterion_dicke_vn},
    {2, "Dicke Renyi law", criterion_dicke_renyi, nullptr},
    {3, "leading-coefficient universality", criterion_universality, nullptr},
    {4, "determinant identity", criterion_detA, nullptr},
    {5, "finite-combination saturation", criterion_saturation, nullptr},
    {6, "finite-N convergence rate", nullptr, criterion_convergence},
    {7, "oracle equivalence", criterion_oracles, nullptr},
    {8, "basis inversion", criterion_reconstruction, nullptr},
    {9, "Cantor dimension", criterion_cantor, nullptr},
    {10, "engine cross-checks", criterion_engines, nullptr},
    {11, "geometry suite", criterion_geometry, nullptr},
};

} // namespace

// Default: every criterion verbatim; exit code = number of failures.
// --known-defects: criteria 1 and 6 are additionally checked against their
// verified true behavior and count as expected failures (XFAIL) when the
// verbatim clause fails for the documented reason; used by ctest so that
// regressions in either direction stay visible.
int main(int argc, char** argv) {
    int only = 0;
    bool known_defects = false;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--known-defects") == 0) known_defects = true;
        else only = std::atoi(argv[a]);
    }
    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        Outcome out;
        try {
            if (c.simple) {
                out.spec_ok = c.simple(detail);
                out.documented_ok = out.spec_ok;
            } else {
                out = c.outcome(detail);
            }
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration_cast<std::chrono::duration<double>>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        const char* status = out.spec_ok ? "PASS"
                             : (known_defects && out.documented_ok) ? "XFAIL"
                                                                    : "FAIL";
        std::printf("%-5s criterion %2d %-36s [%6.2f s] %s\n", status, c.id, c.name, secs,
                    detail.c_str());
        std::fflush(stdout);
        if (known_defects ? !out.documented_ok : !out.spec_ok) ++failures;
    }
    std::printf("%d criteria failed\n", failures);
    return failures;
}
