#pragma once

#include <cstdint>
#include <vector>

#include "abelint/intersection.hpp"
#include "abelint/rational.hpp"
#include "abelint/torus.hpp"

namespace abelint {

// Exact feasible range of one coordinate on a segment, endpoints rational.
struct SegmentInterval {
    Rational lo, hi;
    bool lo_closed = true, hi_closed = false;

    bool empty() const {
        if (lo < hi) return false;
        if (hi < lo) return true;
        return !(lo_closed && hi_closed);
    }
    bool contains(double x, double slack = 0.0) const {
        const double l = lo.to_double(), h = hi.to_double();
        if (x < l - slack || x > h + slack) return false;
        if (!lo_closed && x <= l - slack) return false;
        if (!hi_closed && x >= h + slack) return false;
        return true;
    }
};

// Affine graph translate L_{n,a} = L_n + (0,a) meeting F x F, described by
// the integer offset a and the per-coordinate feasible x ranges.
struct SegmentDescriptor {
    std::int64_t n = 1;
    std::vector<std::int64_t> a; // 2g integer offsets
    std::vector<SegmentInterval> intervals;

    std::int64_t height() const {
        std::int64_t h = n < 0 ? -n : n;
        for (auto v : a) h = std::max(h, v < 0 ? -v : v);
        return h;
    }
};

// Builds the descriptor for a given offset vector (intervals derived and
// clipped to [0,1) exactly). Throws if the offset is infeasible.
SegmentDescriptor make_segment(std::int64_t n, const std::vector<std::int64_t>& a);

// Lazy lexicographic enumeration of all segments of Gamma_n over F x F.
// For n > 0 the offsets range over {-(n-1),...,0} per coordinate; for n < 0
// over {0,...,|n|}.
class SegmentEnumerator {
  public:
    SegmentEnumerator(std::int64_t n, int g);
    // Writes the next descriptor; returns false when exhausted.
    bool next(SegmentDescriptor& out);
    std::int64_t total_count() const;

  private:
    std::int64_t n_;
    int g_;
    std::int64_t lo_, hi_; // per-coordinate offset range
    std::vector<std::int64_t> cursor_;
    bool done_ = false;
};

// n^2g, the exact segment count for n >= 1 (lazy closed form; matches the
// enumerator's output length).
std::int64_t segment_count(std::int64_t n, int g);

// Materializes the full list; BudgetError past `budget` descriptors.
std::vector<SegmentDescriptor> enumerate_segments(std::int64_t n, int g,
                                                  std::int64_t budget = 20000000);

// The unique segment whose lift carries y: a_i = reduced(n*y)_i - n*y_i.
SegmentDescriptor attribute_solution(const TorusPoint& y, std::int64_t n);

struct CensusRow {
    std::int64_t n = 0;
    std::int64_t count = 0;
};

// Divisor-divisor census (structural analogue of the dim-0 statement):
// per n <= N, isolated intersection points farther than eps from every
// torsion ball. The dim-0 point regime lives in density.hpp.
std::vector<CensusRow> bad_n_census(const AbelianTorus& torus, const ThetaDivisor& X,
                                    const ThetaDivisor& Y, std::int64_t N, double eps,
                                    const std::vector<TorusPoint>& torsion_V,
                                    const SolveOptions& opts);

} // namespace abelint
