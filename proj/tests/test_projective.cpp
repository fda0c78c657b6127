#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "spinent/projective.hpp"

using namespace spinent;

namespace {
constexpr double pi = std::numbers::pi;

std::mt19937_64 rng(20240803);

ProjectivePoint random_point(int D) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(D) + 1);
    for (cplx& z : c) z = cplx(unif(rng), unif(rng));
    return ProjectivePoint::canonicalize(c);
}

SphericalChart random_chart(int D) {
    std::uniform_real_distribution<double> uth(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> uphi(0.0, 0.5 * pi);
    SphericalChart c;
    for (int d = 0; d < D; ++d) {
        c.theta.push_back(uth(rng));
        c.phi.push_back(uphi(rng));
    }
    return c;
}

double max_component_diff(const ProjectivePoint& a, const ProjectivePoint& b) {
    double worst = 0.0;
    for (int j = 0; j <= a.dim_d(); ++j) worst = std::max(worst, std::abs(a[std::size_t(j)] - b[std::size_t(j)]));
    return worst;
}
} // namespace

TEST_CASE("canonicalize: scaling, phase gauge, normalization") {
    const ProjectivePoint a = ProjectivePoint::canonicalize({cplx(2, 0), cplx(0, 0)});
    CHECK(a[0] == cplx(1, 0));
    CHECK(a[1] == cplx(0, 0));

    const ProjectivePoint b = ProjectivePoint::canonicalize({cplx(0, 0), cplx(0, 3)});
    CHECK(b[0] == cplx(0, 0));
    CHECK(b[1] == cplx(1, 0));

    const ProjectivePoint c = ProjectivePoint::canonicalize({cplx(1, 0), cplx(1, 0)});
    CHECK(std::abs(c[0] - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(c[1] - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);

    CHECK_THROWS_AS(ProjectivePoint::canonicalize({cplx(0, 0), cplx(0, 0)}),
                    std::invalid_argument);
}

TEST_CASE("canonicalize: scalar multiples agree to 1e-12") {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const int D = 1 + rep % 3;
        std::vector<cplx> raw(static_cast<std::size_t>(D) + 1);
        for (cplx& z : raw) z = cplx(unif(rng), unif(rng));
        const ProjectivePoint p = ProjectivePoint::canonicalize(raw);
        const cplx scale = std::polar(0.3 + std::abs(unif(rng)), pi * unif(rng));
        std::vector<cplx> scaled = raw;
        for (cplx& z : scaled) z *= scale;
        const ProjectivePoint q = ProjectivePoint::canonicalize(scaled);
        CHECK(max_component_diff(p, q) < 1e-12);
    }
}

TEST_CASE("canonical gauge: reference component real nonnegative, unit norm") {
    for (int rep = 0; rep < 100; ++rep) {
        const ProjectivePoint p = random_point(1 + rep % 4);
        double norm = 0.0, best = 0.0;
        std::size_t ref = 0;
        for (int j = 0; j <= p.dim_d(); ++j) {
            norm += std::norm(p[std::size_t(j)]);
            if (std::abs(p[std::size_t(j)]) > best) {
                best = std::abs(p[std::size_t(j)]);
                ref = std::size_t(j);
            }
        }
        CHECK(std::abs(norm - 1.0) < 1e-12);
        CHECK(p[ref].imag() == 0.0);
        CHECK(p[ref].real() >= 0.0);
    }
}

TEST_CASE("overlap basics") {
    const ProjectivePoint e0 = ProjectivePoint::canonicalize({cplx(1, 0), cplx(0, 0)});
    const ProjectivePoint e1 = ProjectivePoint::canonicalize({cplx(0, 0), cplx(1, 0)});
    const ProjectivePoint plus = ProjectivePoint::canonicalize({cplx(1, 0), cplx(1, 0)});
    CHECK(std::abs(overlap(e0, e0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(overlap(e0, e1)) < 1e-15);
    CHECK(std::abs(overlap(e0, plus) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
    const ProjectivePoint e0_3 =
        ProjectivePoint::canonicalize({cplx(1, 0), cplx(0, 0), cplx(0, 0)});
    CHECK_THROWS_AS(overlap(e0, e0_3), std::invalid_argument);
}

TEST_CASE("fs_distance: values and metric axioms") {
    const ProjectivePoint e0 = ProjectivePoint::canonicalize({cplx(1, 0), cplx(0, 0)});
    const ProjectivePoint e1 = ProjectivePoint::canonicalize({cplx(0, 0), cplx(1, 0)});
    const ProjectivePoint plus = ProjectivePoint::canonicalize({cplx(1, 0), cplx(1, 0)});
    CHECK(fs_distance(e0, e0) == 0.0);
    CHECK(std::abs(fs_distance(e0, e1) - pi) < 1e-14);
    CHECK(std::abs(fs_distance(e0, plus) - pi / 2) < 1e-14);

    for (int rep = 0; rep < 10000; ++rep) {
        const int D = 1 + rep % 3;
        const ProjectivePoint a = random_point(D), b = random_point(D), c = random_point(D);
        const double dab = fs_distance(a, b);
        CHECK(dab >= 0.0);
        CHECK(std::abs(dab - fs_distance(b, a)) == 0.0);
        CHECK(fs_distance(a, c) <= dab + fs_distance(b, c) + 1e-9);
    }
}

TEST_CASE("gauge invariance of distance and |overlap|") {
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * pi);
    for (int rep = 0; rep < 500; ++rep) {
        const int D = 1 + rep % 3;
        const ProjectivePoint a = random_point(D), b = random_point(D);
        std::vector<cplx> raw(b.components());
        const cplx ph = std::polar(1.0, uphase(rng));
        for (cplx& z : raw) z *= ph;
        const ProjectivePoint b2 = ProjectivePoint::canonicalize(raw);
        CHECK(std::abs(fs_distance(a, b) - fs_distance(a, b2)) <= 1e-12);
        CHECK(std::abs(std::abs(overlap(a, b)) - std::abs(overlap(a, b2))) <= 1e-12);
    }
}

TEST_CASE("identity of indiscernibles in canonical gauge") {
    for (int rep = 0; rep < 100; ++rep) {
        const ProjectivePoint a = random_point(2);
        const ProjectivePoint b = ProjectivePoint::canonicalize(a.components());
        CHECK(fs_distance(a, b) < 1e-7);
        CHECK(max_component_diff(a, b) < 1e-15);
    }
}

TEST_CASE("chart_to_point examples") {
    {
        SphericalChart c{{0.0}, {pi / 4}};
        const ProjectivePoint p = chart_to_point(c);
        CHECK(std::abs(p[0] - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
        CHECK(std::abs(p[1] - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
    }
    {
        SphericalChart c{{0.0}, {0.0}};
        const ProjectivePoint p = chart_to_point(c);
        CHECK(std::abs(p[0] - cplx(1, 0)) < 1e-15);
        CHECK(std::abs(p[1]) < 1e-15);
    }
    {
        SphericalChart c{{0.0, 0.0}, {pi / 2, pi / 2}};
        const ProjectivePoint p = chart_to_point(c);
        CHECK(std::abs(p[0]) < 1e-15);
        CHECK(std::abs(p[1]) < 1e-15);
        CHECK(std::abs(p[2] - cplx(1, 0)) < 1e-15);
    }
    CHECK_THROWS_AS(chart_to_point(SphericalChart{{-0.1}, {0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(chart_to_point(SphericalChart{{0.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("chart amplitudes reproduce |components|") {
    for (int rep = 0; rep < 300; ++rep) {
        const int D = 1 + rep % 4;
        const SphericalChart c = random_chart(D);
        const std::vector<double> a = chart_amplitudes(c);
        const ProjectivePoint p = chart_to_point(c);
        double norm = 0.0;
        for (int j = 0; j <= D; ++j) {
            CHECK(std::abs(std::abs(p[std::size_t(j)]) - a[std::size_t(j)]) <= 1e-12);
            norm += a[std::size_t(j)] * a[std::size_t(j)];
        }
        CHECK(std::abs(norm - 1.0) < 1e-12);
    }
}

TEST_CASE("volume_density examples") {
    CHECK(std::abs(volume_density(SphericalChart{{0.0}, {pi / 4}}) - 2.0) < 1e-14);
    CHECK(volume_density(SphericalChart{{0.0}, {0.0}}) == 0.0);
    CHECK(std::abs(volume_density(SphericalChart{{0.0, 0.0}, {pi / 4, pi / 4}}) - 2.0) < 1e-14);
}

TEST_CASE("metric examples and determinant identity") {
    {
        const Eigen::MatrixXd g = metric_at(SphericalChart{{0.0}, {pi / 4}});
        CHECK(std::abs(g(0, 0) - 1.0) < 1e-14);
        CHECK(std::abs(g(1, 1) - 4.0) < 1e-14);
        CHECK(g(0, 1) == 0.0);
    }
    {
        const Eigen::MatrixXd g = metric_at(SphericalChart{{0.0}, {0.0}});
        CHECK(std::abs(g(0, 0)) < 1e-14);
    }
    int checked = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int D = 1 + rep % 4;
        const SphericalChart c = random_chart(D);
        const double vol2 = volume_density(c) * volume_density(c);
        if (vol2 < 1e-4) continue; // degenerate boundary: relative check is conditioning-limited
        const Eigen::MatrixXd g = metric_at(c);
        CHECK(std::abs(g.determinant() / vol2 - 1.0) <= 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        ++checked;
    }
    CHECK(checked > 500);
}

TEST_CASE("log_chain_product") {
    const ProjectivePoint e0 = ProjectivePoint::canonicalize({cplx(1, 0), cplx(0, 0)});
    const ProjectivePoint e1 = ProjectivePoint::canonicalize({cplx(0, 0), cplx(1, 0)});
    const ProjectivePoint plus = ProjectivePoint::canonicalize({cplx(1, 0), cplx(1, 0)});

    {
        std::vector<ProjectivePoint> pts{e0, e0, e0};
        const LogComplex lc = log_chain_product(pts, 5.0);
        CHECK(lc.log_mod == 0.0);
        CHECK(lc.phase == 0.0);
    }
    {
        std::vector<ProjectivePoint> pts{e0, plus};
        const LogComplex lc = log_chain_product(pts, 2.0);
        CHECK(std::abs(lc.value() - cplx(0.25, 0)) < 1e-15);
    }
    {
        std::vector<ProjectivePoint> pts{e0, plus, e1, e0};
        const LogComplex lc = log_chain_product(pts, 3.0);
        CHECK(lc.is_zero());
        CHECK(lc.value() == cplx(0, 0));
    }
    // exp of the log form equals the direct cyclic product
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + rep % 3;
        std::vector<ProjectivePoint> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_point(2));
        cplx direct(1, 0);
        for (int i = 0; i < n; ++i) direct *= overlap(pts[std::size_t(i)], pts[std::size_t((i + 1) % n)]);
        direct = std::pow(direct, 7);
        CHECK(std::abs(log_chain_product(pts, 7.0).value() - direct) < 1e-12);
    }
}
