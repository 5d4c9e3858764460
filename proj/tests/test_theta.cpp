#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "abelint/theta.hpp"
#include "oracle_helpers.hpp"

using namespace abelint;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::VectorXcd random_lift(const AbelianTorus& torus, Rng& rng) {
    return torus.lift(oracle::random_coords(rng, 2 * torus.g()));
}
} // namespace

TEST_CASE("truncation radius: monotone in tol and in the quadratic form") {
    const auto unit = oracle::unit_torus_g2();
    const double r6 = truncation_radius(unit, 1e-6);
    const double r12 = truncation_radius(unit, 1e-12);
    CHECK(r12 >= r6);

    Eigen::MatrixXcd scaled(2, 2);
    scaled << std::complex<double>(0, 4), 0, 0, std::complex<double>(0, 4);
    CHECK(truncation_radius(AbelianTorus(scaled), 1e-6) <= r6);

    // summand count at tol = 1e-10 stays far below 1e4
    const double r10 = truncation_radius(unit, 1e-10);
    std::int64_t count = 0;
    const int box = static_cast<int>(std::ceil(r10)) + 1;
    for (int a = -box; a <= box; ++a)
        for (int b = -box; b <= box; ++b)
            if (std::hypot(a, b) <= r10) ++count;
    CHECK(count >= 1);
    CHECK(count <= 10000);

    CHECK_THROWS_AS(truncation_radius(unit, 0.0), TolOutOfRangeError);
    CHECK_THROWS_AS(truncation_radius(unit, 1.5), TolOutOfRangeError);
}

TEST_CASE("theta at the origin on i*I2: classical constant and brute force") {
    const auto unit = oracle::unit_torus_g2();
    const auto chr = ThetaCharacteristic::zero(2);
    const auto val = theta(Eigen::VectorXcd::Zero(2), unit, chr, 1e-10);

    const double classical = std::pow(std::pow(M_PI, 0.25) / std::tgamma(0.75), 2.0);
    CHECK(std::abs(val.value - classical) <= 1e-9);
    CHECK(std::abs(val.value.real() - 1.1803405990) <= 1e-9);

    const auto brute = oracle::brute_theta0(Eigen::VectorXcd::Zero(2), unit.omega());
    CHECK(std::abs(val.value - std::complex<double>(static_cast<double>(brute.real()),
                                                    static_cast<double>(brute.imag()))) <= 1e-10);
    CHECK(val.claimed_abs_error <= 1e-10);
}

TEST_CASE("engine matches the brute-force sum at random points") {
    const auto torus = oracle::standard_torus();
    const auto chr = ThetaCharacteristic::zero(2);
    ThetaSeries series(torus, chr, 1e-10);
    Rng rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::VectorXcd z = random_lift(torus, rng);
        const auto got = series.eval(z, false).value;
        const auto want = oracle::brute_theta0(z, torus.omega());
        CHECK(std::abs(got - std::complex<double>(static_cast<double>(want.real()),
                                                  static_cast<double>(want.imag()))) < 1e-10);
    }
}

TEST_CASE("characteristics: engine matches brute force, odd theta vanishes") {
    const auto torus = oracle::standard_torus();
    ThetaCharacteristic chr = ThetaCharacteristic::zero(2);
    chr.alpha[0] = Rational(1, 2);
    chr.alpha[1] = Rational(1, 3);
    chr.beta[0] = Rational(1, 4);
    ThetaSeries series(torus, chr, 1e-10);
    Rng rng(103);
    Eigen::VectorXd alpha(2), beta(2);
    alpha << 0.5, 1.0 / 3;
    beta << 0.25, 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXcd z = random_lift(torus, rng);
        const auto got = series.eval(z, false).value;
        const auto want = oracle::brute_theta(z, torus.omega(), alpha, beta);
        CHECK(std::abs(got - std::complex<double>(static_cast<double>(want.real()),
                                                  static_cast<double>(want.imag()))) < 1e-10);
    }

    // odd half-integer characteristic (4*alpha.beta odd): theta(0) = 0
    ThetaCharacteristic odd = ThetaCharacteristic::zero(2);
    odd.alpha[0] = Rational(1, 2);
    odd.beta[0] = Rational(1, 2);
    const auto at0 = theta(Eigen::VectorXcd::Zero(2), torus, odd, 1e-12);
    CHECK(std::abs(at0.value) < 1e-12);

    // and in g = 1 with the classical odd characteristic
    const auto t1 = oracle::torus_g1();
    ThetaCharacteristic odd1 = ThetaCharacteristic::zero(1);
    odd1.alpha[0] = Rational(1, 2);
    odd1.beta[0] = Rational(1, 2);
    CHECK(std::abs(theta(Eigen::VectorXcd::Zero(1), t1, odd1, 1e-12).value) < 1e-12);
}

TEST_CASE("parity: theta(-z) = theta(z) for characteristic zero") {
    const auto torus = oracle::standard_torus();
    ThetaSeries series(torus, ThetaCharacteristic::zero(2), 1e-10);
    Rng rng(107);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXcd z = random_lift(torus, rng);
        const auto a = series.eval(z, false).value;
        const auto b = series.eval(-z, false).value;
        CHECK(std::abs(a - b) <= 2e-10);
    }
}

TEST_CASE("quasi-periodicity with translates in [-2,2]^2") {
    const auto torus = oracle::standard_torus();
    const double tol = 1e-10;
    ThetaSeries series(torus, ThetaCharacteristic::zero(2), tol);
    Rng rng(109);
    const std::complex<double> I(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXcd z = random_lift(torus, rng);
        Eigen::VectorXd m(2), n(2);
        for (int i = 0; i < 2; ++i) {
            m[i] = std::floor(rng.next_in(-2, 3));
            n[i] = std::floor(rng.next_in(-2, 3));
        }
        const Eigen::VectorXcd zs =
            z + torus.omega() * m.cast<std::complex<double>>() + n.cast<std::complex<double>>();
        const auto lhs = series.eval(zs, false).value;
        const std::complex<double> quad =
            (m.cast<std::complex<double>>().transpose() * torus.omega() *
             m.cast<std::complex<double>>())(0);
        const std::complex<double> factor =
            std::exp(-I * M_PI * quad - I * kTwoPi * m.cast<std::complex<double>>().dot(z));
        const auto rhs = factor * series.eval(z, false).value;
        // relative residual: the factor reaches ~1e13 at the box corners
        const double scale = std::max(1.0, std::abs(rhs));
        CHECK(std::abs(lhs - rhs) / scale <= 10 * tol);
    }
}

TEST_CASE("gradient: symmetric point, finite differences, quasi-periodicity") {
    const auto torus = oracle::standard_torus();
    const auto chr = ThetaCharacteristic::zero(2);
    ThetaSeries series(torus, chr, 1e-10);

    const auto at0 = series.eval(Eigen::VectorXcd::Zero(2), true);
    CHECK(at0.gradient->norm() < 1e-10);

    Rng rng(113);
    const double h = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXcd z = random_lift(torus, rng);
        const auto at_z = series.eval(z, true);
        const auto grad = *at_z.gradient;
        // deviation is measured against the local value scale: the h^2
        // truncation error of the stencil grows with |theta'''|, which is
        // proportional to |theta| in the high-|Im z| corners
        const double scale = std::max(1.0, std::abs(at_z.value));
        for (int j = 0; j < 2; ++j) {
            Eigen::VectorXcd zp = z, zm = z;
            zp[j] += h;
            zm[j] -= h;
            const std::complex<double> fd =
                (series.eval(zp, false).value - series.eval(zm, false).value) / (2 * h);
            CHECK(std::abs(grad[j] - fd) / scale <= 1e-6);
        }
    }

    // differentiated quasi-periodicity across one full period
    const std::complex<double> I(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXcd z = random_lift(torus, rng);
        Eigen::VectorXd m = Eigen::VectorXd::Zero(2);
        m[trial % 2] = 1;
        const Eigen::VectorXcd zs = z + torus.omega() * m.cast<std::complex<double>>();
        const auto base = series.eval(z, true);
        const auto shifted = series.eval(zs, true);
        const std::complex<double> quad =
            (m.cast<std::complex<double>>().transpose() * torus.omega() *
             m.cast<std::complex<double>>())(0);
        const std::complex<double> factor =
            std::exp(-I * M_PI * quad - I * kTwoPi * m.cast<std::complex<double>>().dot(z));
        const Eigen::VectorXcd want =
            factor * (*base.gradient - I * kTwoPi * base.value * m.cast<std::complex<double>>());
        const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
        CHECK((*shifted.gradient - want).cwiseAbs().maxCoeff() / scale <= 1e-8);
    }
}

TEST_CASE("convergence: tightening tol never degrades the brute-force gap") {
    const auto torus = oracle::standard_torus();
    const auto chr = ThetaCharacteristic::zero(2);
    Rng rng(127);
    std::vector<Eigen::VectorXcd> panel;
    for (int i = 0; i < 5; ++i) panel.push_back(random_lift(torus, rng));

    double prev_worst = std::numeric_limits<double>::infinity();
    for (double tol = 1e-4; tol >= 1e-12; tol /= 2) {
        ThetaSeries series(torus, chr, tol);
        double worst = 0;
        for (const auto& z : panel) {
            const auto got = series.eval(z, false).value;
            const auto want = oracle::brute_theta0(z, torus.omega());
            worst = std::max(worst, std::abs(got - std::complex<double>(
                                                       static_cast<double>(want.real()),
                                                       static_cast<double>(want.imag()))));
        }
        CHECK(worst <= prev_worst + 1e-15);
        prev_worst = worst;
    }
}

TEST_CASE("general g: diagonal g = 3 torus factorizes, matches brute force") {
    Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) omega(i, i) = std::complex<double>(0, 1.0 + 0.2 * i);
    const AbelianTorus torus(omega);
    ThetaSeries series(torus, ThetaCharacteristic::zero(3), 1e-10);

    // product structure: theta(0) is the product of the 1-d constants
    std::complex<double> want(1, 0);
    for (int i = 0; i < 3; ++i) {
        Eigen::MatrixXcd tau(1, 1);
        tau << omega(i, i);
        want *= theta(Eigen::VectorXcd::Zero(1), AbelianTorus(tau),
                      ThetaCharacteristic::zero(1), 1e-12).value;
    }
    const auto got = series.eval(Eigen::VectorXcd::Zero(3), false).value;
    CHECK(std::abs(got - want) < 1e-10);

    Rng rng(137);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::VectorXcd z = torus.lift(oracle::random_coords(rng, 6));
        const auto b = oracle::brute_theta0(z, omega, 8);
        CHECK(std::abs(series.eval(z, false).value -
                       std::complex<double>(static_cast<double>(b.real()),
                                            static_cast<double>(b.imag()))) < 1e-10);
    }
}

TEST_CASE("claimed error bound honors the requested tolerance on reduced args") {
    const auto torus = oracle::standard_torus();
    ThetaSeries series(torus, ThetaCharacteristic::zero(2), 1e-8);
    Rng rng(131);
    for (int trial = 0; trial < 20; ++trial) {
        const auto val = series.eval(random_lift(torus, rng), false);
        CHECK(val.claimed_abs_error <= 1e-8);
    }
}
