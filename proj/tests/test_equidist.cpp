#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "abelint/equidist.hpp"
#include "oracle_helpers.hpp"

using namespace abelint;

namespace {

std::vector<std::int64_t> range1(std::int64_t N) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(N));
    for (std::int64_t i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = i + 1;
    return out;
}

Eigen::VectorXi freq(int a, int b, int c, int d) {
    Eigen::VectorXi k(4);
    k << a, b, c, d;
    return k;
}

TorusPoint golden_point() {
    Eigen::VectorXd y(4);
    y << 0.61803398874989484820, 0.41421356237309504880, 0.3, 0.7;
    return TorusPoint(y);
}

} // namespace

TEST_CASE("weyl sums: constant orbit, exact rational cancellation, golden decay") {
    const TorusPoint origin(Eigen::VectorXd::Zero(4));
    CHECK(weyl_sum(origin, range1(100), freq(1, 0, 0, 0)).magnitude == doctest::Approx(1.0));

    // full-period root-of-unity sum vanishes
    Eigen::VectorXd q(4);
    q << 0.25, 0.0, 0.0, 0.0;
    const auto rep = weyl_sum(TorusPoint(q), range1(400), freq(1, 0, 0, 0));
    CHECK(rep.magnitude <= 1e-12);

    const auto golden = golden_point();
    const std::vector<Eigen::VectorXi> ks = {freq(1, 0, 0, 0), freq(0, 1, 0, 0), freq(0, 0, 1, 0),
                                             freq(0, 0, 0, 1), freq(1, 1, 0, 0)};
    for (const auto& k : ks) {
        const double m100 = weyl_sum(golden, range1(100), k).magnitude;
        const double m10000 = weyl_sum(golden, range1(10000), k).magnitude;
        CHECK(m10000 <= 0.02);
        // decay across scales, up to the fp noise floor at exact-cancellation
        // frequencies (the rational coordinates sum to zero identically)
        CHECK(m10000 <= m100 + 1e-12);
    }

    CHECK_THROWS_AS(weyl_sum(origin, {}, freq(1, 0, 0, 0)), ValidationError);
    CHECK_THROWS_AS(weyl_sum(origin, range1(10), freq(0, 0, 0, 0)), ValidationError);
}

TEST_CASE("discrepancy: regular grid, single point, bounds, refinement, overflow") {
    // exact lattice grid in 2 dimensions (g = 1)
    const int m = 8;
    std::vector<TorusPoint> grid;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            Eigen::VectorXd v(2);
            v << static_cast<double>(a) / m, static_cast<double>(b) / m;
            grid.emplace_back(v);
        }
    CHECK(discrepancy_estimate(grid, m) <= 2.0 / m + 1e-12);

    // a single point at the origin: one box holds everything
    std::vector<TorusPoint> one{TorusPoint(Eigen::VectorXd::Zero(4))};
    const double est = discrepancy_estimate(one, 5);
    CHECK(est >= 1.0 - 1.0 / std::pow(5, 4));
    CHECK(est <= 1.0);

    Rng rng(701);
    std::vector<TorusPoint> cloud;
    for (int i = 0; i < 200; ++i) cloud.emplace_back(oracle::random_coords(rng, 4));
    for (int g = 2; g <= 8; g *= 2) {
        const double d = discrepancy_estimate(cloud, g);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
    // refinement: doubling the grid never decreases the estimate
    CHECK(discrepancy_estimate(cloud, 4) <= discrepancy_estimate(cloud, 8) + 1e-15);
    CHECK(discrepancy_estimate(cloud, 8) <= discrepancy_estimate(cloud, 16) + 1e-15);

    CHECK_THROWS_AS(discrepancy_estimate(cloud, 200), GridOverflowError);
    CHECK_THROWS_AS(discrepancy_estimate(cloud, 1), ValidationError);
}

TEST_CASE("orbit discrepancy of the golden point decays across three scales") {
    const auto y = golden_point();
    double prev = 2.0;
    for (std::int64_t N : {100, 1000, 10000}) {
        std::vector<TorusPoint> orbit;
        orbit.reserve(static_cast<std::size_t>(N));
        Eigen::VectorXd ny = Eigen::VectorXd::Zero(4);
        for (std::int64_t n = 1; n <= N; ++n) {
            ny = frac_vector(ny + y.coords());
            orbit.emplace_back(ny);
        }
        const double d = discrepancy_estimate(orbit, 9);
        CHECK(d <= prev);
        prev = d;
    }
}

TEST_CASE("approximating translates: exact hit, strict decrease, valid lattice vectors") {
    const auto torus = oracle::standard_torus();
    Rng rng(709);
    const TorusPoint y(oracle::random_coords(rng, 4));

    const auto self = approximating_translates(torus, y, y, 50);
    REQUIRE(!self.steps.empty());
    CHECK(self.steps.front().n == 1);
    CHECK(self.steps.front().dist <= 1e-12);
    CHECK(self.steps.size() == 1); // nothing can strictly improve on zero

    // non-rational y: the orbit equidistributes in the full torus
    const TorusPoint x(oracle::random_coords(rng, 4));
    const TorusPoint yy(oracle::random_coords(rng, 4));
    const auto trace = approximating_translates(torus, yy, x, 4000);
    REQUIRE(!trace.steps.empty());
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& st : trace.steps) {
        CHECK(st.dist < prev);
        prev = st.dist;
        // the reported lattice vector reproduces the reported distance
        Eigen::VectorXd diff =
            x.coords() - static_cast<double>(st.n) * yy.coords() - st.a.cast<double>();
        CHECK(torus.lift(diff).norm() == doctest::Approx(st.dist).epsilon(1e-9));
    }
    CHECK(trace.steps.back().dist <= 0.2);
}

TEST_CASE("orbit reaches random targets on the standard torus") {
    const auto torus = oracle::standard_torus();
    Rng rng(719);
    int reached = 0;
    for (int trial = 0; trial < 5; ++trial) {
        const TorusPoint x(oracle::random_coords(rng, 4));
        const TorusPoint y(oracle::random_coords(rng, 4));
        const auto trace = approximating_translates(torus, y, x, 10000);
        if (!trace.steps.empty() && trace.steps.back().dist <= 0.1) ++reached;
    }
    CHECK(reached == 5);
}
