#include "abelint/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace abelint {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.141592653589793238462643383279;

// Safety margin: the internal series is truncated well below the requested
// tolerance so that moderate quasi-periodic reduction factors (|E| up to
// ~1e12) cannot push the delivered error past it.
constexpr double kInternalTolFactor = 1e-12;

struct TailModel {
    int g;
    double lambda; // smallest eigenvalue of Im(omega)
    double B;      // bound on |Im z| over reduced arguments

    // Upper bound for the series tail over |m+alpha| > R.
    double bound(double R) const {
        const int k0 = std::max(1, static_cast<int>(std::ceil(R)));
        double total = 0.0;
        for (int k = k0; k < k0 + 2000; ++k) {
            // max of -pi*lambda*r^2 + 2*pi*r*B over the shell [k, k+1]
            double rstar = B / lambda;
            rstar = std::min(std::max(rstar, static_cast<double>(k)), k + 1.0);
            const double logmax = -kPi * lambda * rstar * rstar + kTwoPi * rstar * B;
            const double count = std::pow(2.0 * k + 7.0, g);
            const double shell = count * std::exp(logmax);
            total += shell;
            if (shell < 1e-320 && k > static_cast<int>(B / lambda) + 1) break;
        }
        return total;
    }

    double radius_for(double tol) const {
        double R = 0.5;
        while (bound(R) > tol) {
            R += 0.25;
            if (R > 1e4) throw TolOutOfRangeError("theta truncation radius search diverged");
        }
        return R;
    }
};

TailModel tail_model(const AbelianTorus& torus) {
    TailModel tm;
    tm.g = torus.g();
    tm.lambda = torus.im_eig_min();
    Eigen::MatrixXd im = torus.omega().imag();
    tm.B = im.operatorNorm() * std::sqrt(static_cast<double>(torus.g()));
    return tm;
}

struct KahanComplex {
    double sr = 0, si = 0, cr = 0, ci = 0;
    inline void add(std::complex<double> v) {
        double yr = v.real() - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = v.imag() - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
    }
    std::complex<double> get() const { return {sr, si}; }
};

} // namespace

double truncation_radius(const AbelianTorus& torus, double tol) {
    if (!(tol > 0.0) || tol >= 1.0)
        throw TolOutOfRangeError("truncation_radius: tol must lie in (0,1)");
    return tail_model(torus).radius_for(tol);
}

ThetaSeries::ThetaSeries(const AbelianTorus& torus, const ThetaCharacteristic& chr, double tol)
    : torus_(torus), tol_(tol) {
    if (!(tol > 0.0) || tol >= 1.0)
        throw TolOutOfRangeError("theta: tol must lie in (0,1)");
    const int g = torus.g();
    if (static_cast<int>(chr.alpha.size()) != g || static_cast<int>(chr.beta.size()) != g)
        throw ValidationError("theta characteristic has wrong dimension");

    alpha_.resize(g);
    beta_.resize(g);
    for (int i = 0; i < g; ++i) {
        alpha_[i] = chr.alpha[i].mod1().to_double();
        beta_[i] = chr.beta[i].mod1().to_double();
    }

    const TailModel tm = tail_model(torus);
    const double internal_tol = std::max(tol * kInternalTolFactor, 1e-280);
    radius_ = tm.radius_for(internal_tol);
    tail_bound_ = tm.bound(radius_);

    // All m with |m + alpha| <= radius, sorted by descending quadratic form
    // (ascending term magnitude), ties broken lexicographically.
    const Eigen::MatrixXd Y = torus.omega().imag();
    std::vector<int> lo(g), hi(g);
    for (int i = 0; i < g; ++i) {
        lo[i] = static_cast<int>(std::ceil(-radius_ - alpha_[i]));
        hi[i] = static_cast<int>(std::floor(radius_ - alpha_[i]));
    }
    Eigen::VectorXi m = Eigen::VectorXi::Zero(g);
    std::vector<std::pair<double, Term>> staged;
    std::function<void(int)> rec = [&](int d) {
        if (d == g) {
            Eigen::VectorXd mpa = m.cast<double>() + alpha_;
            if (mpa.norm() > radius_) return;
            Term t;
            t.m = m;
            t.m_plus_alpha = mpa;
            const std::complex<double> q =
                (mpa.cast<std::complex<double>>().transpose() * torus.omega() *
                 mpa.cast<std::complex<double>>())(0);
            t.quad_phase = std::complex<double>(0, kPi) * q;
            staged.emplace_back(mpa.dot(Y * mpa), std::move(t));
            return;
        }
        for (int v = lo[d]; v <= hi[d]; ++v) {
            m[d] = v;
            rec(d + 1);
        }
    };
    rec(0);
    std::sort(staged.begin(), staged.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return std::lexicographical_compare(a.second.m.data(), a.second.m.data() + a.second.m.size(),
                                            b.second.m.data(), b.second.m.data() + b.second.m.size());
    });
    terms_.reserve(staged.size());
    for (auto& s : staged) terms_.push_back(std::move(s.second));
}

ThetaSeries::Reduced ThetaSeries::eval_reduced(const Eigen::VectorXcd& z, bool want_gradient) const {
    const int g = torus_.g();
    if (z.size() != g) throw ValidationError("theta: argument has wrong dimension");

    // Quasi-periodic reduction z = z0 + omega*s_tail + s_head.
    Eigen::VectorXd v = torus_.coords_of(z);
    Eigen::VectorXd shift(2 * g);
    for (int i = 0; i < 2 * g; ++i) shift[i] = std::floor(v[i]);
    Eigen::VectorXd vr = v - shift;
    for (int i = 0; i < 2 * g; ++i)
        if (vr[i] >= 1.0) { vr[i] = 0.0; shift[i] += 1.0; }
    const Eigen::VectorXcd z0 = torus_.lift(vr);
    const Eigen::VectorXd s_head = shift.head(g);
    const Eigen::VectorXd s_tail = shift.tail(g);

    // log E = -i*pi*s_t^T omega s_t - 2*pi*i*s_t^T (z0 + beta) + 2*pi*i*alpha^T s_head
    const std::complex<double> I(0, 1);
    std::complex<double> quad =
        (s_tail.cast<std::complex<double>>().transpose() * torus_.omega() *
         s_tail.cast<std::complex<double>>())(0);
    std::complex<double> lin = s_tail.cast<std::complex<double>>().dot(
        z0 + beta_.cast<std::complex<double>>());
    std::complex<double> log_factor =
        -I * kPi * quad - I * kTwoPi * lin + I * kTwoPi * alpha_.dot(s_head);

    const Eigen::VectorXcd zb = z0 + beta_.cast<std::complex<double>>();

    KahanComplex val;
    std::vector<KahanComplex> grad(want_gradient ? g : 0);
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::complex<double> dot(0, 0);
        for (int i = 0; i < g; ++i) dot += it->m_plus_alpha[i] * zb[i];
        const std::complex<double> w = std::exp(it->quad_phase + I * kTwoPi * dot);
        val.add(w);
        if (want_gradient) {
            const std::complex<double> f = I * kTwoPi * w;
            for (int i = 0; i < g; ++i) grad[i].add(it->m_plus_alpha[i] * f);
        }
    }

    Reduced r;
    r.value = val.get();
    r.log_factor = log_factor;
    r.shift = shift;
    r.tail_bound = tail_bound_;
    if (want_gradient) {
        r.gradient.resize(g);
        for (int i = 0; i < g; ++i)
            r.gradient[i] = grad[i].get() - I * kTwoPi * s_tail[i] * r.value;
    }
    return r;
}

ThetaValue ThetaSeries::eval(const Eigen::VectorXcd& z, bool want_gradient) const {
    const Reduced r = eval_reduced(z, want_gradient);
    const std::complex<double> E = std::exp(r.log_factor);
    ThetaValue out;
    out.value = E * r.value;
    if (want_gradient) out.gradient = E * r.gradient;
    out.claimed_abs_error = std::abs(E) * r.tail_bound;
    return out;
}

ThetaValue theta(const Eigen::VectorXcd& z, const AbelianTorus& torus,
                 const ThetaCharacteristic& chr, double tol) {
    return ThetaSeries(torus, chr, tol).eval(z, false);
}

Eigen::VectorXcd theta_gradient(const Eigen::VectorXcd& z, const AbelianTorus& torus,
                                const ThetaCharacteristic& chr, double tol) {
    return *ThetaSeries(torus, chr, tol).eval(z, true).gradient;
}

} // namespace abelint
