#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "abelint/theta.hpp"
#include "abelint/torus.hpp"

namespace abelint {

// Subvariety {z : theta[char](m*z + c; omega) = 0}: a translated theta
// divisor pulled back through multiplication by m. Dimension g-1 by
// construction.
struct ThetaDivisor {
    ThetaCharacteristic chr;
    Eigen::VectorXcd translate; // c
    std::int64_t multiplier = 1; // m != 0

    static ThetaDivisor principal(int g) {
        ThetaDivisor d;
        d.chr = ThetaCharacteristic::zero(g);
        d.translate = Eigen::VectorXcd::Zero(g);
        d.multiplier = 1;
        return d;
    }
};

struct DivisorPoint {
    TorusPoint point;
    double residual = 0.0; // |theta| at the reduced argument
};

// Evaluator bound to (torus, divisor, tol); reusable across many points.
// Residuals are measured at the lattice-reduced argument, which keeps the
// membership test scale-free: the raw theta value differs by the exact
// quasi-periodicity factor of the reduction.
class DivisorEvaluator {
  public:
    DivisorEvaluator(const AbelianTorus& torus, const ThetaDivisor& divisor, double tol);

    const AbelianTorus& torus() const { return *torus_; }
    const ThetaDivisor& divisor() const { return divisor_; }
    const ThetaSeries& series() const { return *series_; }

    // Raw value theta[char](m*z + c) at an ambient lift z.
    std::complex<double> value(const Eigen::VectorXcd& z) const;

    struct Normalized {
        std::complex<double> value;    // theta at the reduced argument
        Eigen::VectorXcd gradient_z;   // d(value)/dz up to the constant reduction factor
        double log_scale;              // log |reduction factor|
    };
    // Value and z-gradient of the defining equation, both divided by the
    // reduction factor of the argument m*z + c. Same zero set, unit scale.
    Normalized normalized(const Eigen::VectorXcd& z, bool want_gradient) const;

    double residual(const TorusPoint& p) const;

  private:
    const AbelianTorus* torus_;
    ThetaDivisor divisor_;
    std::shared_ptr<ThetaSeries> series_;
    Eigen::VectorXd c_coords_; // lattice coordinates of the translate
};

std::complex<double> evaluate(const AbelianTorus& torus, const ThetaDivisor& D,
                              const TorusPoint& p, double tol);
bool contains(const AbelianTorus& torus, const ThetaDivisor& D, const TorusPoint& p, double eps);

// Seeded divisor sampling: random complex lines through the fundamental
// domain, dense scan of |theta| along each line, Newton polishing of the
// local minima. Deterministic given the seed; line index drives a derived
// stream, so any parallel split yields the same list. Throws
// SamplingExhaustedError when 10*count lines do not produce count points.
std::vector<DivisorPoint> sample_points(const AbelianTorus& torus, const ThetaDivisor& D,
                                        int count, std::uint64_t seed);

// g = 2 only: unit tangent vector v of the divisor at p, i.e. the complex
// line with <grad theta, v> = 0 (bilinear pairing), phase fixed so the first
// nonzero component is real positive. Requires residual <= 1e-9 and gradient
// norm >= 1e-6 (else SingularPointError).
Eigen::VectorXcd tangent_direction(const AbelianTorus& torus, const ThetaDivisor& D,
                                   const TorusPoint& p);

} // namespace abelint
