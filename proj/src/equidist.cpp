#include "abelint/equidist.hpp"

#include <cmath>
#include <limits>

namespace abelint {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Kahan {
    double s = 0, c = 0;
    inline void add(double v) {
        const double y = v - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};
} // namespace

WeylReport weyl_sum(const TorusPoint& y, const std::vector<std::int64_t>& n_list,
                    const Eigen::VectorXi& k) {
    if (n_list.empty()) throw ValidationError("weyl_sum: n_list must be nonempty");
    if (k.size() != y.dim2g()) throw ValidationError("weyl_sum: frequency dimension mismatch");
    if (k.isZero()) throw ValidationError("weyl_sum: frequency vector must be nonzero");

    const double ky = k.cast<double>().dot(y.coords());
    Kahan re, im;
    for (const std::int64_t n : n_list) {
        // reduce k.(n y) mod 1 before the trig call to keep the phase accurate
        const double phase = static_cast<double>(n) * ky;
        const double frac = phase - std::floor(phase);
        re.add(std::cos(kTwoPi * frac));
        im.add(std::sin(kTwoPi * frac));
    }
    WeylReport r;
    r.k = k;
    r.N = static_cast<std::int64_t>(n_list.size());
    r.magnitude = std::hypot(re.s, im.s) / static_cast<double>(r.N);
    if (r.magnitude > 1.0) r.magnitude = 1.0;
    return r;
}

double discrepancy_estimate(const std::vector<TorusPoint>& points, int grid) {
    if (grid < 2) throw ValidationError("discrepancy_estimate: grid must be >= 2");
    if (points.empty()) throw ValidationError("discrepancy_estimate: empty point set");
    const int d = points.front().dim2g();
    double cells_d = 1;
    for (int i = 0; i < d; ++i) cells_d *= grid;
    if (cells_d > 1e8) throw GridOverflowError("discrepancy grid exceeds 1e8 cells");
    const std::int64_t cells = static_cast<std::int64_t>(cells_d);

    // Histogram, then inclusive prefix sums along each axis: counts[j] then
    // holds the number of points in the anchored box with corner (j+1)/grid.
    std::vector<double> counts(static_cast<std::size_t>(cells), 0.0);
    std::vector<std::int64_t> stride(static_cast<std::size_t>(d));
    stride[static_cast<std::size_t>(d) - 1] = 1;
    for (int i = d - 2; i >= 0; --i)
        stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i) + 1] * grid;

    for (const auto& p : points) {
        std::int64_t idx = 0;
        for (int i = 0; i < d; ++i) {
            int c = static_cast<int>(p.coords()[i] * grid);
            if (c >= grid) c = grid - 1;
            idx += stride[static_cast<std::size_t>(i)] * c;
        }
        counts[static_cast<std::size_t>(idx)] += 1.0;
    }
    for (int axis = 0; axis < d; ++axis) {
        const std::int64_t st = stride[static_cast<std::size_t>(axis)];
        for (std::int64_t base = 0; base < cells; ++base) {
            const std::int64_t pos = (base / st) % grid;
            if (pos == 0) continue;
            counts[static_cast<std::size_t>(base)] += counts[static_cast<std::size_t>(base - st)];
        }
    }

    const double N = static_cast<double>(points.size());
    double worst = 0.0;
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        double volume = 1.0;
        std::int64_t rest = idx;
        for (int i = 0; i < d; ++i) {
            const std::int64_t c = rest / stride[static_cast<std::size_t>(i)];
            rest %= stride[static_cast<std::size_t>(i)];
            volume *= static_cast<double>(c + 1) / grid;
        }
        const double dev = std::abs(counts[static_cast<std::size_t>(idx)] / N - volume);
        if (dev > worst) worst = dev;
    }
    return worst;
}

ApproximationTrace approximating_translates(const AbelianTorus& torus, const TorusPoint& y,
                                            const TorusPoint& x, std::int64_t n_max) {
    if (n_max < 1) throw ValidationError("approximating_translates: n_max must be >= 1");
    ApproximationTrace trace;
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd ny = Eigen::VectorXd::Zero(y.dim2g());
    const auto& ints = torus.near_translate_ints();
    const auto& lifts = torus.near_translates();
    for (std::int64_t n = 1; n <= n_max; ++n) {
        ny = frac_vector(ny + y.coords());
        // minimizing translate m: x ~ ny_reduced + m in the ambient metric
        const Eigen::VectorXcd z0 = torus.lift(Eigen::VectorXd(x.coords() - ny));
        double d = std::numeric_limits<double>::infinity();
        std::size_t m_idx = 0;
        for (std::size_t i = 0; i < lifts.size(); ++i) {
            const double dd = (z0 - lifts[i]).norm();
            if (dd < d) { d = dd; m_idx = i; }
        }
        if (d < best) {
            best = d;
            // [n]y + a ~ x with a integral: a = m - (n*y - reduced(n*y))
            ApproximationStep step;
            step.n = n;
            step.dist = d;
            const Eigen::VectorXd nyfull = static_cast<double>(n) * y.coords();
            step.a.resize(y.dim2g());
            for (int i = 0; i < y.dim2g(); ++i)
                step.a[i] = static_cast<int>(ints[m_idx][i] - llround(nyfull[i] - ny[i]));
            trace.steps.push_back(step);
        }
    }
    return trace;
}

} // namespace abelint
