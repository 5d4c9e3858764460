#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abelint/divisor.hpp"
#include "abelint/torus.hpp"

namespace abelint {

enum class Classification { ExpectedIsolated, UnexpectedPositiveDim };

// A located solution y of the graph system {theta_Y(y) = 0, theta_X(n*y) = 0},
// with its projection x = n*y. Residuals and the Jacobian are measured on the
// lattice-reduced (unit-scale) form of the equations.
struct IntersectionRecord {
    Eigen::VectorXd y_coords;
    Eigen::VectorXd x_coords;
    double residual = 0.0;
    std::int64_t n = 0;
    double jacobian_min_sv = 0.0;
    Classification classification = Classification::ExpectedIsolated;
    // Isolated but rank-deficient root (counted once, flagged; no
    // multiplicity is assigned).
    bool tangential = false;
};

struct CountPair {
    std::int64_t found = 0;      // distinct y-solutions
    std::int64_t x_distinct = 0; // distinct projected x-points
    std::int64_t expected = 0;   // cohomological count 2 n^2 m_X^2 m_Y^2
};

struct ScanReport {
    std::int64_t n_min = 0, n_max = 0;
    std::vector<std::int64_t> improper_n;
    std::map<std::int64_t, CountPair> counts_per_n;
    std::map<std::int64_t, std::vector<IntersectionRecord>> records_per_n;
    std::map<int, double> coverage_radius_per_N;
    std::vector<std::string> warnings;
};

// dim(X cap Y) when the intersection is proper; nullopt encodes the empty
// intersection (dim = -infinity) expected when dimX + dimY < dimA.
std::optional<int> expected_dimension(int dimX, int dimY, int dimA);

// Degree of the graph system on a principally polarized abelian surface:
// the class of {theta(m z + c) = 0} is m^2 * Theta and Theta^2 = 2, so the
// y-solution count is 2 n^2 m_X^2 m_Y^2.
std::int64_t expected_count(const ThetaDivisor& X, const ThetaDivisor& Y, std::int64_t n);

struct SolveOptions {
    int grid_res = 128;   // per real dimension at |n| <= 5; scaled linearly in |n|
    double tol = 1e-10;   // Newton convergence: both residuals below tol
    int threads = 0;      // 0 = process default
    bool classify = true;
};

// Grid scan over the fundamental parallelogram for cells where both
// |theta_Y| and |theta_X o [n]| are locally small, damped Newton from each
// candidate, deduplication under torus_distance <= 1e-6, lexicographic
// ordering. g = 2 only.
std::vector<IntersectionRecord> solve_graph_system(const AbelianTorus& torus,
                                                   const ThetaDivisor& Y, const ThetaDivisor& X,
                                                   std::int64_t n, const SolveOptions& opts,
                                                   std::vector<std::string>* warnings = nullptr);

// Flags positive-dimensional components: rank-deficient Jacobian plus a
// curve-tracing probe that stays on both divisors, or an elongated cluster
// of more than 4x the expected count of roots.
void classify_components(const AbelianTorus& torus, std::vector<IntersectionRecord>& records,
                         const ThetaDivisor& Y, const ThetaDivisor& X, std::int64_t n,
                         double tol, int threads = 0);

// Runs solve + classify for every n in [n_min, n_max] \ {0}.
ScanReport properness_scan(const AbelianTorus& torus, const ThetaDivisor& X,
                           const ThetaDivisor& Y, std::int64_t n_min, std::int64_t n_max,
                           const SolveOptions& opts, bool keep_records = false);

// Empirical covering radius: max over probe points sampled on X of the
// distance to the nearest intersection point.
double coverage_metric(const AbelianTorus& torus, const ThetaDivisor& X,
                       const std::vector<Eigen::VectorXd>& intersection_points,
                       int probe_count, std::uint64_t seed);

// Density pipeline: accumulates the expected isolated points of X cap [n]Y
// for n = 2..max(checkpoints) and records the covering radius of the running
// union at each checkpoint (fixed probe set, so radii are monotone).
ScanReport density_scan(const AbelianTorus& torus, const ThetaDivisor& X, const ThetaDivisor& Y,
                        const std::vector<std::int64_t>& checkpoints, const SolveOptions& opts,
                        int probe_count, std::uint64_t seed,
                        std::vector<Eigen::VectorXd>* union_points = nullptr);

// Deduplication helper shared by the solver and the reports: keeps the first
// representative (input order) of every torus_distance <= eps cluster.
std::vector<int> dedup_torus_points(const AbelianTorus& torus,
                                    const std::vector<Eigen::VectorXd>& coords, double eps);

namespace detail {
// |theta[chr](P(mu*a + c))| on the full R^4 coordinate grid (row-major over
// a1, a2, a3, a4); exact on nodes up to series truncation. Verification hook
// for the screening pass and for grid-enumeration oracles.
std::vector<float> screen_grid(const AbelianTorus& torus, const ThetaDivisor& D, std::int64_t mu,
                               int R, double tol);
} // namespace detail

} // namespace abelint
