#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abelint/rational.hpp"
#include "abelint/torus.hpp"

namespace abelint {

// Congruence n ≡ e (mod k) with 0 <= e < k.
struct CongruenceCondition {
    std::int64_t e = 0;
    std::int64_t k = 1;

    CongruenceCondition() = default;
    CongruenceCondition(std::int64_t e_, std::int64_t k_) : e(e_), k(k_) {
        if (k <= 0 || e < 0 || e >= k)
            throw ValidationError("congruence condition requires 0 <= e < k");
    }
    bool operator==(const CongruenceCondition& o) const { return e == o.e && k == o.k; }
};

struct DensityResult {
    Rational delta;                              // exact density in [0,1]
    std::vector<CongruenceCondition> conditions;
    std::int64_t bad_set_modulus = 1;            // lcm of the moduli
};

struct TorsionPairMatch {
    std::size_t y_index = 0; // index of t in the Y list
    std::size_t x_index = 0; // index of t' in the X list
    CongruenceCondition condition;
};

// Least e in [0, k) with e*t = t' on the torus (k = torsion_order(t)), or
// nullopt when t' is not in the cyclic group generated by t. Solved by
// per-coordinate linear congruences combined with CRT.
std::optional<CongruenceCondition> solve_discrete_log(const TorsionPoint& t,
                                                      const TorsionPoint& t_prime);

// All pairs (t, t') with t' in <t>, each with its congruence condition. The
// matched t' values form the exceptional set V.
struct TorsionPairReport {
    std::vector<TorsionPairMatch> matches;
    std::vector<TorsionPoint> exceptional_set; // V, deduplicated, input order
};
TorsionPairReport find_torsion_pairs(const std::vector<TorsionPoint>& y_torsion,
                                     const std::vector<TorsionPoint>& x_torsion);

// Natural density of { n : n = e_i (mod k_i) for some i }, exact. Direct
// residue enumeration when lcm <= 1e6, inclusion-exclusion over subsets
// otherwise (at most 20 conditions; ModulusOverflowError past the budget).
DensityResult density_of_union(const std::vector<CongruenceCondition>& conditions);

// Test oracle companions, exposed for cross-checking: each method alone.
Rational density_by_enumeration(const std::vector<CongruenceCondition>& conditions);
Rational density_by_inclusion_exclusion(const std::vector<CongruenceCondition>& conditions);

// Fraction of n in [1, N] with torus_distance(x, n*y) < eps while x stays
// farther than eps from every point of V: the numerical surrogate for
// "X cap [n]Y is neither empty nor lies in V" in the dim-0 regime.
double empirical_bad_fraction(const AbelianTorus& torus, const TorusPoint& x, const TorusPoint& y,
                              std::int64_t N, double eps, const std::vector<TorusPoint>& V);

// Same kernel, reported per n (0/1 counts) for census plots.
std::vector<std::pair<std::int64_t, int>> bad_n_census_points(const AbelianTorus& torus,
                                                              const TorusPoint& x,
                                                              const TorusPoint& y, std::int64_t N,
                                                              double eps,
                                                              const std::vector<TorusPoint>& V);

} // namespace abelint
