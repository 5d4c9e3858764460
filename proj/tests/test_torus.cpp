#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abelint/torus.hpp"
#include "oracle_helpers.hpp"

using namespace abelint;

namespace {
Eigen::VectorXd vec4(double a, double b, double c, double d) {
    Eigen::VectorXd v(4);
    v << a, b, c, d;
    return v;
}
} // namespace

TEST_CASE("make_torus validates the period matrix") {
    Eigen::MatrixXcd diag(2, 2);
    diag << std::complex<double>(0, 1), 0, 0, std::complex<double>(0, 1);
    CHECK(AbelianTorus(diag).g() == 2);

    Eigen::MatrixXcd mixed(2, 2);
    mixed << std::complex<double>(0, 1), 0.5, 0.5, std::complex<double>(0, 2);
    CHECK(AbelianTorus(mixed).g() == 2);

    Eigen::MatrixXcd asym(2, 2);
    asym << std::complex<double>(0, 1), 1.0, 0.0, std::complex<double>(0, 1);
    CHECK_THROWS_AS(AbelianTorus{asym}, NonSymmetricError);

    Eigen::MatrixXcd negim(2, 2);
    negim << std::complex<double>(0, -1), 0, 0, std::complex<double>(0, 1);
    CHECK_THROWS_AS(AbelianTorus{negim}, NotPositiveDefiniteError);
}

TEST_CASE("reduce_mod_lattice takes fractional parts") {
    Eigen::VectorXd v(2);
    v << 3, -2;
    CHECK(reduce_mod_lattice(v).coords().isZero(0));

    v << 0.25, 0.75;
    CHECK(reduce_mod_lattice(v).coords().isApprox(v));

    v << 1.3, -0.2;
    Eigen::VectorXd want(2);
    want << 0.3, 0.8;
    CHECK((reduce_mod_lattice(v).coords() - want).cwiseAbs().maxCoeff() < 1e-15);

    // result minus input is integral
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd raw(4);
        for (int i = 0; i < 4; ++i) raw[i] = rng.next_in(-20, 20);
        const Eigen::VectorXd red = reduce_mod_lattice(raw).coords();
        for (int i = 0; i < 4; ++i) {
            const double diff = red[i] - raw[i];
            CHECK(std::abs(diff - std::round(diff)) < 1e-9);
        }
    }
}

TEST_CASE("lattice periodicity of the reduction") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd v(4), m(4);
        for (int i = 0; i < 4; ++i) {
            v[i] = rng.next_in(-5, 5);
            m[i] = std::floor(rng.next_in(-10, 10));
        }
        const Eigen::VectorXd a = reduce_mod_lattice(v).coords();
        const Eigen::VectorXd b = reduce_mod_lattice(v + m).coords();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("scalar endomorphisms") {
    const TorusPoint p(vec4(0.3, 0.9, 0.1, 0.5));
    const auto id = Endomorphism::scalar(2, 1);
    CHECK(apply_endomorphism(id, p).coords().isApprox(p.coords()));

    const TorusPoint third(vec4(1.0 / 3, 2.0 / 3, 0, 0));
    CHECK(apply_endomorphism(Endomorphism::scalar(2, 3), third).coords().cwiseAbs().maxCoeff() <
          1e-12);

    const auto doubled = apply_endomorphism(Endomorphism::scalar(2, 2), p);
    CHECK((doubled.coords() - vec4(0.6, 0.8, 0.2, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scalar composition a*b = ab") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t a = static_cast<std::int64_t>(rng.next_below(21)) - 10;
        const std::int64_t b = static_cast<std::int64_t>(rng.next_below(21)) - 10;
        const TorusPoint p(oracle::random_coords(rng, 4));
        const auto lhs = scalar_multiple(a, scalar_multiple(b, p));
        const auto rhs = scalar_multiple(a * b, p);
        CHECK(torus_distance(oracle::standard_torus(), lhs, rhs) < 1e-9);
    }
}

TEST_CASE("general endomorphisms must be C-linear") {
    const auto torus = oracle::standard_torus();
    Eigen::MatrixXi scal = Eigen::MatrixXi::Identity(4, 4) * 3;
    CHECK_NOTHROW(Endomorphism::general(torus, scal));

    Eigen::MatrixXi bad = Eigen::MatrixXi::Identity(4, 4);
    bad(0, 0) = 2; // breaks commutation with J on a generic torus
    CHECK_THROWS_AS(Endomorphism::general(torus, bad), NotComplexLinearError);

    // the diagonal torus has complex multiplication: the matrix of
    // multiplication by i is integral, C-linear, and squares to -1
    const auto unit = oracle::unit_torus_g2();
    Eigen::MatrixXi imul = Eigen::MatrixXi::Zero(4, 4);
    imul.topRightCorner(2, 2) = -Eigen::MatrixXi::Identity(2, 2);
    imul.bottomLeftCorner(2, 2) = Eigen::MatrixXi::Identity(2, 2);
    const auto phi = Endomorphism::general(unit, imul);
    CHECK_THROWS_AS(Endomorphism::general(torus, imul), NotComplexLinearError);
    Rng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const TorusPoint p(oracle::random_coords(rng, 4));
        const auto twice = apply_endomorphism(phi, apply_endomorphism(phi, p));
        const auto minus = scalar_multiple(-1, p);
        CHECK(torus_distance(unit, twice, minus) < 1e-9);
    }
}

TEST_CASE("torsion orders") {
    CHECK(torsion_order(TorsionPoint({Rational(0), Rational(0), Rational(0), Rational(0)})) == 1);
    CHECK(torsion_order(TorsionPoint({Rational(1, 2), Rational(0), Rational(1, 3), Rational(0)})) ==
          6);
    CHECK(torsion_order(TorsionPoint(
              {Rational(3, 7), Rational(2, 7), Rational(0), Rational(5, 7)})) == 7);
}

TEST_CASE("order annihilates exactly (rational arithmetic)") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> coords;
        for (int i = 0; i < 4; ++i) {
            const std::int64_t q = 1 + static_cast<std::int64_t>(rng.next_below(12));
            const std::int64_t p = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(q)));
            coords.emplace_back(p, q);
        }
        const TorsionPoint t(coords);
        const std::int64_t k = torsion_order(t);
        const TorsionPoint kt = scalar_multiple(k, t);
        for (const auto& c : kt.coords()) CHECK(c == Rational(0));
        // no smaller positive multiple annihilates
        for (std::int64_t j = 1; j < k; ++j) {
            bool zero = true;
            for (const auto& c : scalar_multiple(j, t).coords())
                if (!(c == Rational(0))) { zero = false; break; }
            CHECK_FALSE(zero);
        }
    }
}

TEST_CASE("torus distance: identity, wrap-around, brute force") {
    const auto torus = oracle::standard_torus();
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const TorusPoint p(oracle::random_coords(rng, 4));
        CHECK(torus_distance(torus, p, p) == 0.0);
    }

    const auto t1 = oracle::torus_g1({0.0, 1.0});
    Eigen::VectorXd a(2), b(2);
    a << 0.0, 0.0;
    b << 0.0, 0.9;
    CHECK(torus_distance(t1, TorusPoint(a), TorusPoint(b)) == doctest::Approx(0.1).epsilon(1e-12));

    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXd p = oracle::random_coords(rng, 4);
        const Eigen::VectorXd q = oracle::random_coords(rng, 4);
        const double got = torus_distance(torus, p, q);
        const double want = oracle::brute_torus_distance(torus, p, q, 2);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("torus distance: symmetry and triangle inequality") {
    const auto torus = oracle::standard_torus();
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const TorusPoint p(oracle::random_coords(rng, 4));
        const TorusPoint q(oracle::random_coords(rng, 4));
        const TorusPoint r(oracle::random_coords(rng, 4));
        const double pq = torus_distance(torus, p, q);
        const double qp = torus_distance(torus, q, p);
        CHECK(pq == doctest::Approx(qp).epsilon(1e-14));
        CHECK(pq <= torus_distance(torus, p, r) + torus_distance(torus, r, q) + 1e-12);
    }
}

TEST_CASE("lift and coords round-trip") {
    const auto torus = oracle::standard_torus();
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXd c = oracle::random_coords(rng, 4);
        CHECK((torus.coords_of(torus.lift(c)) - c).cwiseAbs().maxCoeff() < 1e-12);
    }
}
