// Timing comparison of the serial reference kernels against their OpenMP
// counterparts on representative workloads.

#include <chrono>
#include <cstdio>
#include <random>

#include <omp.h>

#include "spinent/kernels.hpp"
#include "spinent/measures.hpp"
#include "spinent/oracles.hpp"

using namespace spinent;

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_of(F&& f, double* result) {
    const auto t0 = clock_type::now();
    *result = f();
    const auto t1 = clock_type::now();
    return std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0).count();
}

void report(const char* name, double t_serial, double t_omp, double r_serial, double r_omp) {
    std::printf("%-28s serial %8.3f s   omp %8.3f s   speedup %5.2fx   rel diff %.2e\n", name,
                t_serial, t_omp, t_serial / t_omp,
                std::abs(r_serial - r_omp) / std::max(std::abs(r_serial), 1e-300));
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());

    // Cantor level-12 pair moment, the n = 2 exact-overlap workload.
    {
        const DiscreteMeasure atoms = atoms_at_level(cantor_measure(), 12);
        std::vector<cplx> comps;
        std::vector<double> weights;
        for (const Atom& a : atoms.atoms) {
            weights.push_back(a.weight);
            for (const cplx& c : a.point.components()) comps.push_back(c);
        }
        const kernels::AtomsView view{comps.data(), weights.data(), atoms.atoms.size(), 1};
        double r1 = 0.0, r2 = 0.0;
        const double t1 = time_of([&] { return kernels::discrete_pair_sum_serial(view, 1e4, -700.0); }, &r1);
        const double t2 = time_of([&] { return kernels::discrete_pair_sum_omp(view, 1e4, -700.0); }, &r2);
        report("discrete_pair_sum k=12", t1, t2, r1, r2);
    }

    // Gaussian kernel, same atom set.
    {
        const std::vector<double> xs = ifs_parameters_at_level(cantor_measure(), 12);
        double r1 = 0.0, r2 = 0.0;
        const double coef = 9.8696 * 1e4 / 4.0;
        const double t1 =
            time_of([&] { return kernels::gaussian_pair_sum_serial(xs, coef, 46.0, nullptr); }, &r1);
        const double t2 =
            time_of([&] { return kernels::gaussian_pair_sum_omp(xs, coef, 46.0, nullptr); }, &r2);
        report("gaussian_pair_sum k=12", t1, t2, r1, r2);
    }

    // Reduced-torus trapezoid grid, n = 3 (two angle dimensions).
    {
        const std::vector<double> p{0.5, 0.5};
        double r1 = 0.0, r2 = 0.0;
        const double t1 =
            time_of([&] { return kernels::torus_grid_mean_serial(p, 3, 100.0, 2048); }, &r1);
        const double t2 =
            time_of([&] { return kernels::torus_grid_mean_omp(p, 3, 100.0, 2048); }, &r2);
        report("torus_grid_mean n=3 G=2048", t1, t2, r1, r2);
    }

    // Monte Carlo chain estimator over the torus measure.
    {
        const SpinMeasure measure = TorusMeasure{{0.5, 0.5}};
        const kernels::McDraw draw = [&measure](std::mt19937_64& rng) {
            std::vector<ProjectivePoint> pts;
            for (int a = 0; a < 2; ++a) pts.push_back(sample(measure, rng));
            return log_chain_product(pts, 50.0).real();
        };
        double r1 = 0.0, r2 = 0.0;
        const double t1 = time_of([&] { return kernels::mc_accumulate_serial(draw, 2000000, 7).sum; }, &r1);
        const double t2 = time_of([&] { return kernels::mc_accumulate_omp(draw, 2000000, 7).sum; }, &r2);
        report("mc_accumulate 2e6 draws", t1, t2, r1, r2);
    }

    // Windowed Dicke block-spectrum sums at spin 1.
    {
        const DickeOccupation occ{{333333333, 333333333, 333333334}};
        double r1 = 0.0, r2 = 0.0;
        double t1 = 0.0, t2 = 0.0;
        {
            const auto t0 = clock_type::now();
            r1 = dicke_renyi(occ, 100000, 2.0);
            t1 = std::chrono::duration_cast<std::chrono::duration<double>>(clock_type::now() - t0)
                     .count();
        }
        // dicke_renyi dispatches to the omp kernel; time the serial one directly
        // through a single-thread run for comparison.
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        {
            const auto t0 = clock_type::now();
            r2 = dicke_renyi(occ, 100000, 2.0);
            t2 = std::chrono::duration_cast<std::chrono::duration<double>>(clock_type::now() - t0)
                     .count();
        }
        omp_set_num_threads(saved);
        report("dicke_renyi s=1 m=1e5", t2, t1, r2, r1);
    }

    return 0;
}
