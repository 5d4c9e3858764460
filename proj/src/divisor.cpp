#include "abelint/divisor.hpp"

#include <algorithm>
#include <cmath>

#include "abelint/rng.hpp"

namespace abelint {

namespace {
constexpr double kMembershipResidual = 1e-9;
constexpr double kSmoothGradientMin = 1e-6;
constexpr double kDedupDistance = 1e-6;
} // namespace

DivisorEvaluator::DivisorEvaluator(const AbelianTorus& torus, const ThetaDivisor& divisor,
                                   double tol)
    : torus_(&torus), divisor_(divisor) {
    if (divisor.multiplier == 0) throw ValidationError("divisor multiplier must be nonzero");
    if (divisor.translate.size() != torus.g())
        throw ValidationError("divisor translate has wrong dimension");
    series_ = std::make_shared<ThetaSeries>(torus, divisor.chr, tol);
    c_coords_ = torus.coords_of(divisor.translate);
}

std::complex<double> DivisorEvaluator::value(const Eigen::VectorXcd& z) const {
    Eigen::VectorXcd u = static_cast<double>(divisor_.multiplier) * z + divisor_.translate;
    return series_->eval(u, false).value;
}

DivisorEvaluator::Normalized DivisorEvaluator::normalized(const Eigen::VectorXcd& z,
                                                          bool want_gradient) const {
    Eigen::VectorXcd u = static_cast<double>(divisor_.multiplier) * z + divisor_.translate;
    ThetaSeries::Reduced r = series_->eval_reduced(u, want_gradient);
    Normalized out;
    out.value = r.value;
    out.log_scale = r.log_factor.real();
    if (want_gradient) out.gradient_z = static_cast<double>(divisor_.multiplier) * r.gradient;
    return out;
}

double DivisorEvaluator::residual(const TorusPoint& p) const {
    return std::abs(normalized(torus_->lift(p.coords()), false).value);
}

std::complex<double> evaluate(const AbelianTorus& torus, const ThetaDivisor& D,
                              const TorusPoint& p, double tol) {
    DivisorEvaluator ev(torus, D, tol);
    return ev.value(torus.lift(p.coords()));
}

bool contains(const AbelianTorus& torus, const ThetaDivisor& D, const TorusPoint& p, double eps) {
    if (!(eps > 0)) throw ValidationError("contains: eps must be positive");
    DivisorEvaluator ev(torus, D, std::min(1e-10, eps / 10));
    return ev.residual(p) <= eps;
}

namespace {

// Complex Newton for the restriction of the divisor equation to the line
// z(t) = z0 + t*d. Returns true on convergence to |f| <= target.
bool polish_on_line(const DivisorEvaluator& ev, const Eigen::VectorXcd& z0,
                    const Eigen::VectorXcd& d, std::complex<double>& t, double target) {
    for (int it = 0; it < 40; ++it) {
        const Eigen::VectorXcd z = z0 + t * d;
        const auto n = ev.normalized(z, true);
        const double fmag = std::abs(n.value);
        if (fmag <= target) return true;
        const std::complex<double> fp = n.gradient_z.cwiseProduct(d).sum(); // sum grad_i * d_i
        if (std::abs(fp) < 1e-14) return false;
        std::complex<double> step = -n.value / fp;
        if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
        // backtracking on |f|
        double scale = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 6; ++bt) {
            const Eigen::VectorXcd zn = z0 + (t + scale * step) * d;
            if (std::abs(ev.normalized(zn, false).value) < fmag) {
                t += scale * step;
                moved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!moved) return false;
    }
    const Eigen::VectorXcd z = z0 + t * d;
    return std::abs(ev.normalized(z, false).value) <= target;
}

} // namespace

std::vector<DivisorPoint> sample_points(const AbelianTorus& torus, const ThetaDivisor& D,
                                        int count, std::uint64_t seed) {
    if (count < 1) throw ValidationError("sample_points: count must be >= 1");
    const int g = torus.g();
    DivisorEvaluator ev(torus, D, 1e-12);

    const int max_lines = 10 * count;
    const int scan = 40; // scan grid per line patch
    std::vector<DivisorPoint> out;
    std::vector<Eigen::VectorXd> kept_coords;

    for (int line = 0; line < max_lines && static_cast<int>(out.size()) < count; ++line) {
        Rng rng = rng_stream(seed, rng_tag::divisor_sampling, static_cast<std::uint64_t>(line));
        Eigen::VectorXd base(2 * g);
        for (int i = 0; i < 2 * g; ++i) base[i] = rng.next_double();
        const Eigen::VectorXcd z0 = torus.lift(base);
        Eigen::VectorXcd dir(g);
        for (int i = 0; i < g; ++i)
            dir[i] = std::complex<double>(rng.next_in(-1, 1), rng.next_in(-1, 1));
        if (dir.norm() < 1e-6) continue;
        dir.normalize();

        // |theta| on a complex-t patch; collect strict local minima.
        Eigen::MatrixXd mag(scan, scan);
        const double span = 1.0;
        for (int a = 0; a < scan; ++a)
            for (int b = 0; b < scan; ++b) {
                const std::complex<double> t(span * (a + 0.5) / scan - span / 2,
                                             span * (b + 0.5) / scan - span / 2);
                mag(a, b) = std::abs(ev.normalized(z0 + t * dir, false).value);
            }
        for (int a = 1; a + 1 < scan; ++a) {
            for (int b = 1; b + 1 < scan; ++b) {
                const double v = mag(a, b);
                bool ismin = true;
                for (int da = -1; da <= 1 && ismin; ++da)
                    for (int db = -1; db <= 1; ++db) {
                        if (da == 0 && db == 0) continue;
                        if (mag(a + da, b + db) < v) { ismin = false; break; }
                    }
                if (!ismin) continue;
                std::complex<double> t(span * (a + 0.5) / scan - span / 2,
                                       span * (b + 0.5) / scan - span / 2);
                if (!polish_on_line(ev, z0, dir, t, 1e-12)) continue;
                const TorusPoint p = reduce_mod_lattice(torus.coords_of(z0 + t * dir));
                const double res = ev.residual(p);
                if (res > kMembershipResidual) continue;
                bool dup = false;
                for (const auto& kc : kept_coords)
                    if (torus_distance(torus, kc, p.coords()) <= kDedupDistance) { dup = true; break; }
                if (dup) continue;
                kept_coords.push_back(p.coords());
                out.push_back(DivisorPoint{p, res});
                if (static_cast<int>(out.size()) >= count) break;
            }
            if (static_cast<int>(out.size()) >= count) break;
        }
    }
    if (static_cast<int>(out.size()) < count)
        throw SamplingExhaustedError("sample_points: found " + std::to_string(out.size()) +
                                     " of " + std::to_string(count) + " points within the line budget");
    return out;
}

Eigen::VectorXcd tangent_direction(const AbelianTorus& torus, const ThetaDivisor& D,
                                   const TorusPoint& p) {
    if (torus.g() != 2) throw ValidationError("tangent_direction: implemented for g = 2");
    DivisorEvaluator ev(torus, D, 1e-12);
    const auto n = ev.normalized(torus.lift(p.coords()), true);
    if (std::abs(n.value) > kMembershipResidual)
        throw ValidationError("tangent_direction: point is not on the divisor (residual " +
                              std::to_string(std::abs(n.value)) + ")");
    const Eigen::VectorXcd grad = n.gradient_z;
    if (grad.norm() < kSmoothGradientMin)
        throw SingularPointError("tangent_direction: gradient below smooth-point threshold");
    Eigen::VectorXcd v(2);
    v << -grad[1], grad[0];
    v /= v.norm();
    // fix the phase: first nonzero component real positive
    for (int i = 0; i < 2; ++i) {
        if (std::abs(v[i]) > 1e-12) {
            v *= std::abs(v[i]) / v[i];
            break;
        }
    }
    return v;
}

} // namespace abelint
