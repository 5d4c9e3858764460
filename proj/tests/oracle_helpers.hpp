// Shared, implementation-independent oracles for the test suites: direct
// long-double lattice sums, exhaustive translate searches, brute-force
// residue/discrete-log loops. These deliberately avoid the library's
// truncation, reduction and Newton machinery.
#pragma once

#include <complex>
#include <vector>

#include "abelint/rng.hpp"
#include "abelint/torus.hpp"

namespace oracle {

using Cld = std::complex<long double>;

// Fixed generic test matrices.
inline abelint::AbelianTorus standard_torus() {
    Eigen::MatrixXcd omega(2, 2);
    omega << std::complex<double>(0.25, 1.0), std::complex<double>(0.15, 0.3),
        std::complex<double>(0.15, 0.3), std::complex<double>(-0.2, 0.9);
    return abelint::AbelianTorus(omega);
}

inline abelint::AbelianTorus unit_torus_g2() {
    Eigen::MatrixXcd omega(2, 2);
    omega << std::complex<double>(0, 1), std::complex<double>(0, 0), std::complex<double>(0, 0),
        std::complex<double>(0, 1);
    return abelint::AbelianTorus(omega);
}

inline abelint::AbelianTorus torus_g1(std::complex<double> tau = {0.3, 1.1}) {
    Eigen::MatrixXcd omega(1, 1);
    omega << tau;
    return abelint::AbelianTorus(omega);
}

// Direct box sum of the theta series in long double, radius-10 box
// (tail far below 1e-30 for the test matrices).
inline Cld brute_theta(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& omega,
                       const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                       int radius = 10) {
    const int g = static_cast<int>(omega.rows());
    const long double pi = 3.14159265358979323846264338327950288L;
    Cld total(0, 0);
    std::vector<int> m(static_cast<std::size_t>(g), -radius);
    for (;;) {
        Cld arg(0, 0);
        for (int i = 0; i < g; ++i) {
            const long double mi = m[static_cast<std::size_t>(i)] + (long double)alpha[i];
            for (int j = 0; j < g; ++j) {
                const long double mj = m[static_cast<std::size_t>(j)] + (long double)alpha[j];
                arg += Cld(0, 1) * pi * mi * mj *
                       Cld((long double)omega(i, j).real(), (long double)omega(i, j).imag());
            }
            arg += Cld(0, 1) * 2.0L * pi * mi *
                   (Cld((long double)z[i].real(), (long double)z[i].imag()) +
                    Cld((long double)beta[i], 0));
        }
        total += std::exp(arg);
        int d = 0;
        for (; d < g; ++d) {
            if (m[static_cast<std::size_t>(d)] < radius) {
                ++m[static_cast<std::size_t>(d)];
                break;
            }
            m[static_cast<std::size_t>(d)] = -radius;
        }
        if (d == g) break;
    }
    return total;
}

inline Cld brute_theta0(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& omega, int radius = 10) {
    const int g = static_cast<int>(omega.rows());
    return brute_theta(z, omega, Eigen::VectorXd::Zero(g), Eigen::VectorXd::Zero(g), radius);
}

// Exhaustive minimum over lattice translates with entries in [-range, range].
inline double brute_torus_distance(const abelint::AbelianTorus& torus, const Eigen::VectorXd& p,
                                   const Eigen::VectorXd& q, int range = 2) {
    const int n = 2 * torus.g();
    std::vector<int> m(static_cast<std::size_t>(n), -range);
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        Eigen::VectorXd w = p - q;
        for (int i = 0; i < n; ++i) w[i] -= m[static_cast<std::size_t>(i)];
        best = std::min(best, torus.lift(w).norm());
        int d = 0;
        for (; d < n; ++d) {
            if (m[static_cast<std::size_t>(d)] < range) {
                ++m[static_cast<std::size_t>(d)];
                break;
            }
            m[static_cast<std::size_t>(d)] = -range;
        }
        if (d == n) break;
    }
    return best;
}

inline Eigen::VectorXd random_coords(abelint::Rng& rng, int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.next_double();
    return v;
}

} // namespace oracle
