#include "abelint/density.hpp"

#include <algorithm>
#include <numeric>

namespace abelint {

namespace {

constexpr std::int64_t kEnumerationLimit = 1000000;   // direct sieve budget
constexpr std::int64_t kModulusBudget = 1000000000000; // 1e12, inclusion-exclusion
constexpr int kMaxConditionsIE = 20;

// Extended gcd: returns g and x with a*x = g (mod m).
std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    std::int64_t x1, y1;
    const std::int64_t g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Solves a*e = b (mod m); returns (e0, m0) with solution set e0 + m0*Z, or
// nullopt when unsolvable.
std::optional<std::pair<std::int64_t, std::int64_t>> linear_congruence(std::int64_t a,
                                                                       std::int64_t b,
                                                                       std::int64_t m) {
    a = ((a % m) + m) % m;
    b = ((b % m) + m) % m;
    if (m == 1) return std::make_pair<std::int64_t, std::int64_t>(0, 1);
    std::int64_t x, y;
    const std::int64_t g = std::gcd(a, m);
    if (b % g != 0) return std::nullopt;
    egcd(a, m, x, y);
    const std::int64_t m0 = m / g;
    __int128 e0 = (__int128)(b / g) % m0 * (((x % m0) + m0) % m0) % m0;
    return std::make_pair(static_cast<std::int64_t>(e0), m0);
}

// CRT merge of e = e1 (mod m1) and e = e2 (mod m2); nullopt if inconsistent.
std::optional<std::pair<std::int64_t, std::int64_t>> crt_merge(std::int64_t e1, std::int64_t m1,
                                                               std::int64_t e2, std::int64_t m2) {
    const std::int64_t g = std::gcd(m1, m2);
    if ((e2 - e1) % g != 0) return std::nullopt;
    const std::int64_t l = checked_lcm(m1, m2, kModulusBudget);
    // e = e1 + m1 * t with t = (e2-e1)/g * inv(m1/g) (mod m2/g)
    std::int64_t x, y;
    egcd(m1 / g, m2 / g, x, y);
    const std::int64_t m2g = m2 / g;
    __int128 t = (__int128)((e2 - e1) / g) % m2g * (((x % m2g) + m2g) % m2g) % m2g;
    __int128 e = e1 + (__int128)m1 * static_cast<std::int64_t>(((t % m2g) + m2g) % m2g);
    e %= l;
    if (e < 0) e += l;
    return std::make_pair(static_cast<std::int64_t>(e), l);
}

} // namespace

std::optional<CongruenceCondition> solve_discrete_log(const TorsionPoint& t,
                                                      const TorsionPoint& t_prime) {
    if (t.coords().size() != t_prime.coords().size())
        throw ValidationError("solve_discrete_log: dimension mismatch");
    const std::int64_t k = torsion_order(t);
    std::int64_t e = 0, m = 1;
    for (std::size_t i = 0; i < t.coords().size(); ++i) {
        const Rational& a = t.coords()[i];
        const Rational& b = t_prime.coords()[i];
        // e * (p/q) = p'/q' (mod 1)  <=>  e * p * q' = p' * q (mod q*q')
        const std::int64_t mod = Rational::checked((__int128)a.den * b.den);
        const auto sol = linear_congruence(Rational::checked((__int128)a.num * b.den),
                                           Rational::checked((__int128)b.num * a.den), mod);
        if (!sol) return std::nullopt;
        const auto merged = crt_merge(e, m, sol->first, sol->second);
        if (!merged) return std::nullopt;
        e = merged->first;
        m = merged->second;
    }
    // The combined modulus always divides k; the least solution in [0, k)
    // is the representative mod m.
    return CongruenceCondition(e % k, k);
}

TorsionPairReport find_torsion_pairs(const std::vector<TorsionPoint>& y_torsion,
                                     const std::vector<TorsionPoint>& x_torsion) {
    TorsionPairReport report;
    for (std::size_t i = 0; i < y_torsion.size(); ++i) {
        for (std::size_t j = 0; j < x_torsion.size(); ++j) {
            auto cond = solve_discrete_log(y_torsion[i], x_torsion[j]);
            if (!cond) continue;
            report.matches.push_back(TorsionPairMatch{i, j, *cond});
            bool seen = false;
            for (const auto& v : report.exceptional_set)
                if (v == x_torsion[j]) { seen = true; break; }
            if (!seen) report.exceptional_set.push_back(x_torsion[j]);
        }
    }
    return report;
}

Rational density_by_enumeration(const std::vector<CongruenceCondition>& conditions) {
    if (conditions.empty()) return Rational(0);
    std::int64_t L = 1;
    for (const auto& c : conditions) L = checked_lcm(L, c.k, kEnumerationLimit);
    std::vector<char> marked(static_cast<std::size_t>(L), 0);
    for (const auto& c : conditions)
        for (std::int64_t r = c.e; r < L; r += c.k) marked[static_cast<std::size_t>(r)] = 1;
    std::int64_t hits = std::count(marked.begin(), marked.end(), char(1));
    return Rational(hits, L);
}

Rational density_by_inclusion_exclusion(const std::vector<CongruenceCondition>& conditions) {
    if (conditions.empty()) return Rational(0);
    const int n = static_cast<int>(conditions.size());
    if (n > kMaxConditionsIE)
        throw ModulusOverflowError("density: more than " + std::to_string(kMaxConditionsIE) +
                                   " conditions under inclusion-exclusion");
    std::int64_t L = 1;
    for (const auto& c : conditions) L = checked_lcm(L, c.k, kModulusBudget);

    // Sum over nonempty subsets: (-1)^(|S|+1) * [CRT solvable] * L / lcm(S).
    __int128 numerator = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::int64_t e = 0, m = 1;
        bool ok = true;
        int bits = 0;
        for (int i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            ++bits;
            const auto merged = crt_merge(e, m, conditions[static_cast<std::size_t>(i)].e,
                                          conditions[static_cast<std::size_t>(i)].k);
            if (!merged) { ok = false; break; }
            e = merged->first;
            m = merged->second;
        }
        if (!ok) continue;
        const std::int64_t weight = L / m;
        numerator += (bits % 2 == 1) ? weight : -weight;
    }
    return Rational(Rational::checked(numerator), L);
}

DensityResult density_of_union(const std::vector<CongruenceCondition>& conditions) {
    DensityResult result;
    result.conditions = conditions;
    if (conditions.empty()) {
        result.delta = Rational(0);
        result.bad_set_modulus = 1;
        return result;
    }
    std::int64_t L = 1;
    for (const auto& c : conditions) L = checked_lcm(L, c.k, kModulusBudget);
    result.bad_set_modulus = L;
    result.delta =
        L <= kEnumerationLimit ? density_by_enumeration(conditions)
                               : density_by_inclusion_exclusion(conditions);
    return result;
}

std::vector<std::pair<std::int64_t, int>> bad_n_census_points(const AbelianTorus& torus,
                                                              const TorusPoint& x,
                                                              const TorusPoint& y, std::int64_t N,
                                                              double eps,
                                                              const std::vector<TorusPoint>& V) {
    if (!(eps > 0)) throw ValidationError("census: eps must be positive");
    if (N < 1) throw ValidationError("census: N must be >= 1");
    bool x_clear_of_V = true;
    for (const auto& v : V)
        if (torus_distance(torus, x, v) <= eps) { x_clear_of_V = false; break; }
    std::vector<std::pair<std::int64_t, int>> out;
    out.reserve(static_cast<std::size_t>(N));
    // walk n*y incrementally; exact reduction each step keeps drift at ulp scale
    Eigen::VectorXd ny = Eigen::VectorXd::Zero(x.coords().size());
    for (std::int64_t n = 1; n <= N; ++n) {
        ny = frac_vector(ny + y.coords());
        const bool hit = x_clear_of_V && torus_distance(torus, x.coords(), ny) < eps;
        out.emplace_back(n, hit ? 1 : 0);
    }
    return out;
}

double empirical_bad_fraction(const AbelianTorus& torus, const TorusPoint& x, const TorusPoint& y,
                              std::int64_t N, double eps, const std::vector<TorusPoint>& V) {
    const auto census = bad_n_census_points(torus, x, y, N, eps, V);
    std::int64_t hits = 0;
    for (const auto& [n, c] : census) hits += c;
    return static_cast<double>(hits) / static_cast<double>(N);
}

} // namespace abelint
