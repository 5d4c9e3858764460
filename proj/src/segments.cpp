#include "abelint/segments.hpp"

#include <cmath>

namespace abelint {

namespace {

// Feasible x-range for one coordinate: x in [0,1) with n*x + a in [0,1).
SegmentInterval coordinate_interval(std::int64_t n, std::int64_t a) {
    SegmentInterval iv;
    if (n > 0) {
        // [-a/n, (1-a)/n), both endpoints already inside [0,1]
        iv.lo = Rational(-a, n);
        iv.hi = Rational(1 - a, n);
        iv.lo_closed = true;
        iv.hi_closed = false;
        if (Rational(1) < iv.hi) { iv.hi = Rational(1); iv.hi_closed = false; }
        if (iv.lo < Rational(0)) { iv.lo = Rational(0); iv.lo_closed = true; }
    } else {
        // n < 0, m = -n: raw range ((a-1)/m, a/m], clipped to [0,1)
        const std::int64_t m = -n;
        iv.lo = Rational(a - 1, m);
        iv.hi = Rational(a, m);
        iv.lo_closed = false;
        iv.hi_closed = true;
        if (iv.lo < Rational(0)) { iv.lo = Rational(0); iv.lo_closed = true; }
        if (Rational(1) < iv.hi || iv.hi == Rational(1)) { iv.hi = Rational(1); iv.hi_closed = false; }
    }
    return iv;
}

} // namespace

SegmentDescriptor make_segment(std::int64_t n, const std::vector<std::int64_t>& a) {
    if (n == 0) throw ValidationError("segment: n must be nonzero");
    SegmentDescriptor d;
    d.n = n;
    d.a = a;
    d.intervals.reserve(a.size());
    for (auto ai : a) {
        SegmentInterval iv = coordinate_interval(n, ai);
        if (iv.empty())
            throw ValidationError("segment offset " + std::to_string(ai) + " infeasible for n = " +
                                  std::to_string(n));
        d.intervals.push_back(iv);
    }
    return d;
}

SegmentEnumerator::SegmentEnumerator(std::int64_t n, int g) : n_(n), g_(g) {
    if (n == 0) throw ValidationError("segment enumeration: n must be nonzero");
    if (g < 1) throw ValidationError("segment enumeration: g must be >= 1");
    if (n > 0) { lo_ = -(n - 1); hi_ = 0; }
    else { lo_ = 0; hi_ = -n; }
    cursor_.assign(static_cast<std::size_t>(2 * g), lo_);
}

std::int64_t SegmentEnumerator::total_count() const {
    const __int128 per = hi_ - lo_ + 1;
    __int128 total = 1;
    for (int i = 0; i < 2 * g_; ++i) total *= per;
    if (total > INT64_MAX) throw ModulusOverflowError("segment count exceeds 64 bits");
    return static_cast<std::int64_t>(total);
}

bool SegmentEnumerator::next(SegmentDescriptor& out) {
    if (done_) return false;
    out = make_segment(n_, cursor_);
    // odometer increment
    for (std::size_t i = cursor_.size(); i-- > 0;) {
        if (cursor_[i] < hi_) {
            ++cursor_[i];
            return true;
        }
        cursor_[i] = lo_;
        if (i == 0) done_ = true;
    }
    return true;
}

std::int64_t segment_count(std::int64_t n, int g) {
    if (n < 1) throw ValidationError("segment_count: n must be >= 1");
    __int128 total = 1;
    for (int i = 0; i < 2 * g; ++i) total *= n;
    if (total > INT64_MAX) throw ModulusOverflowError("segment count exceeds 64 bits");
    return static_cast<std::int64_t>(total);
}

std::vector<SegmentDescriptor> enumerate_segments(std::int64_t n, int g, std::int64_t budget) {
    SegmentEnumerator en(n, g);
    if (en.total_count() > budget)
        throw BudgetError("segment enumeration of " + std::to_string(en.total_count()) +
                          " descriptors exceeds the materialization budget");
    std::vector<SegmentDescriptor> out;
    out.reserve(static_cast<std::size_t>(en.total_count()));
    SegmentDescriptor d;
    while (en.next(d)) out.push_back(d);
    return out;
}

SegmentDescriptor attribute_solution(const TorusPoint& y, std::int64_t n) {
    if (n == 0) throw ValidationError("attribute_solution: n must be nonzero");
    std::vector<std::int64_t> a(static_cast<std::size_t>(y.dim2g()));
    const Eigen::VectorXd ny = static_cast<double>(n) * y.coords();
    const Eigen::VectorXd red = frac_vector(ny);
    for (int i = 0; i < y.dim2g(); ++i)
        a[static_cast<std::size_t>(i)] = llround(red[i] - ny[i]);
    return make_segment(n, a);
}

std::vector<CensusRow> bad_n_census(const AbelianTorus& torus, const ThetaDivisor& X,
                                    const ThetaDivisor& Y, std::int64_t N, double eps,
                                    const std::vector<TorusPoint>& torsion_V,
                                    const SolveOptions& opts) {
    if (N < 1) throw ValidationError("census: N must be >= 1");
    if (!(eps > 0)) throw ValidationError("census: eps must be positive");
    std::vector<CensusRow> rows;
    rows.reserve(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        auto records = solve_graph_system(torus, Y, X, n, opts);
        std::int64_t count = 0;
        for (const auto& r : records) {
            if (r.classification != Classification::ExpectedIsolated) continue;
            bool near_torsion = false;
            for (const auto& v : torsion_V)
                if (torus_distance(torus, r.x_coords, v.coords()) <= eps) {
                    near_torsion = true;
                    break;
                }
            if (!near_torsion) ++count;
        }
        rows.push_back(CensusRow{n, count});
    }
    return rows;
}

} // namespace abelint
