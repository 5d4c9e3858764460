#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "abelint/torus.hpp"

namespace abelint {

struct WeylReport {
    Eigen::VectorXi k;       // nonzero integer frequency vector, length 2g
    std::int64_t N = 0;      // number of terms
    double magnitude = 0.0;  // |(1/N) sum exp(2 pi i k.(n_j y))|, in [0,1]
};

struct ApproximationStep {
    std::int64_t n = 0;
    Eigen::VectorXi a;   // lattice translate with [n]y + a closest to x
    double dist = 0.0;
};

struct ApproximationTrace {
    std::vector<ApproximationStep> steps; // strictly decreasing dist
};

// Weyl sum along the orbit {n_j * y}: compensated summation, deterministic
// in the order of n_list.
WeylReport weyl_sum(const TorusPoint& y, const std::vector<std::int64_t>& n_list,
                    const Eigen::VectorXi& k);

// Star-discrepancy lower bound over the grid^2g anchored boxes
// [0, j/grid)^2g. Doubling the grid never decreases the estimate.
// GridOverflowError when grid^2g > 1e8.
double discrepancy_estimate(const std::vector<TorusPoint>& points, int grid);

// Record subsequence of n <= n_max where dist(x, n*y) strictly improves;
// recovers the lattice vector a_n realizing each approach.
ApproximationTrace approximating_translates(const AbelianTorus& torus, const TorusPoint& y,
                                            const TorusPoint& x, std::int64_t n_max);

} // namespace abelint
