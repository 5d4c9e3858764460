#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "abelint/rational.hpp"
#include "abelint/torus.hpp"

namespace abelint {

// Rational characteristic [alpha; beta], entries reduced to [0,1).
struct ThetaCharacteristic {
    std::vector<Rational> alpha, beta;

    static ThetaCharacteristic zero(int g) {
        ThetaCharacteristic c;
        c.alpha.assign(g, Rational(0));
        c.beta.assign(g, Rational(0));
        return c;
    }
    void reduce() {
        for (auto& a : alpha) a = a.mod1();
        for (auto& b : beta) b = b.mod1();
    }
};

struct ThetaValue {
    std::complex<double> value;
    std::optional<Eigen::VectorXcd> gradient;
    double claimed_abs_error = 0.0;
};

// Radius R such that the theta-series tail over lattice points with
// |m + alpha| > R is provably below tol, for arguments reduced to the
// fundamental parallelogram. Uses the conservative isotropic Gaussian bound
// through the smallest eigenvalue of Im(omega). Nondecreasing as tol
// decreases. Throws TolOutOfRangeError unless 0 < tol < 1.
double truncation_radius(const AbelianTorus& torus, double tol);

// Evaluator for theta[alpha,beta](z; omega), bound to one torus,
// characteristic and tolerance. Arguments are reduced quasi-periodically
// into the fundamental parallelogram before summation, so evaluation stays
// well conditioned everywhere; the reduction factor is reported separately.
// Lattice points are summed in ascending magnitude (descending quadratic
// form) with compensated accumulation, in a fixed order, so results are
// bit-reproducible.
class ThetaSeries {
  public:
    ThetaSeries(const AbelianTorus& torus, const ThetaCharacteristic& chr, double tol);

    struct Reduced {
        // value = theta(z0) at the reduced argument z0; the true value at z
        // is exp(log_factor) * value.
        std::complex<double> value;
        // gradient / exp(log_factor); equals grad theta(z0) - 2*pi*i*s_tail*theta(z0).
        Eigen::VectorXcd gradient;
        std::complex<double> log_factor;
        Eigen::VectorXd shift; // integer lattice shift (head | tail), as doubles
        double tail_bound;     // truncation bound on |value|
    };

    Reduced eval_reduced(const Eigen::VectorXcd& z, bool want_gradient) const;
    ThetaValue eval(const Eigen::VectorXcd& z, bool want_gradient) const;

    struct Term {
        Eigen::VectorXi m;              // lattice point
        Eigen::VectorXd m_plus_alpha;
        std::complex<double> quad_phase; // i*pi*(m+a)^T omega (m+a)
    };
    const std::vector<Term>& terms() const { return terms_; }
    const Eigen::VectorXd& alpha_real() const { return alpha_; }
    const Eigen::VectorXd& beta_real() const { return beta_; }
    const AbelianTorus& torus() const { return torus_; }
    double tol() const { return tol_; }
    double tail_bound() const { return tail_bound_; }
    double radius() const { return radius_; }

  private:
    const AbelianTorus& torus_;
    double tol_;
    double radius_;
    double tail_bound_;
    Eigen::VectorXd alpha_, beta_;
    std::vector<Term> terms_;
};

// One-shot evaluations per the module interface.
ThetaValue theta(const Eigen::VectorXcd& z, const AbelianTorus& torus,
                 const ThetaCharacteristic& chr, double tol);
Eigen::VectorXcd theta_gradient(const Eigen::VectorXcd& z, const AbelianTorus& torus,
                                const ThetaCharacteristic& chr, double tol);

} // namespace abelint
