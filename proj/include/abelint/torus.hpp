#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "abelint/errors.hpp"
#include "abelint/rational.hpp"

namespace abelint {

class TorusPoint;

// Complex torus C^g / Λ with Λ = Z^g + omega·Z^g, omega in the Siegel upper
// half space (symmetric, positive-definite imaginary part). The real lattice
// basis e_1..e_2g consists of the standard unit vectors followed by the
// columns of omega; points carry coordinates in this basis.
class AbelianTorus {
  public:
    // Throws NonSymmetricError / NotPositiveDefiniteError.
    explicit AbelianTorus(const Eigen::MatrixXcd& omega, bool assume_simple = true);

    int g() const { return g_; }
    const Eigen::MatrixXcd& omega() const { return omega_; }
    bool assume_simple() const { return assume_simple_; }

    // Real 2g x 2g basis matrix [[I, Re omega], [0, Im omega]] and inverse.
    const Eigen::MatrixXd& basis() const { return basis_; }
    const Eigen::MatrixXd& basis_inverse() const { return basis_inv_; }

    double im_eig_min() const { return im_eig_min_; }
    double im_eig_max() const { return im_eig_max_; }
    // Conditioning report: Im omega eigenvalues inside [0.3, 30].
    bool well_conditioned() const { return im_eig_min_ >= 0.3 && im_eig_max_ <= 30.0; }

    // Ambient lift z = head + omega·tail of lattice coordinates.
    Eigen::VectorXcd lift(const Eigen::VectorXd& coords) const;
    // Lattice coordinates of an ambient point (inverse of lift).
    Eigen::VectorXd coords_of(const Eigen::VectorXcd& z) const;

    // Lifts of the 3^2g integer vectors with entries in {-1,0,1}, used by
    // the torus metric.
    const std::vector<Eigen::VectorXcd>& near_translates() const { return near_translates_; }
    const std::vector<Eigen::VectorXi>& near_translate_ints() const { return near_translate_ints_; }

  private:
    int g_;
    bool assume_simple_;
    Eigen::MatrixXcd omega_;
    Eigen::MatrixXd basis_, basis_inv_;
    double im_eig_min_, im_eig_max_;
    std::vector<Eigen::VectorXcd> near_translates_;
    std::vector<Eigen::VectorXi> near_translate_ints_;
};

// A point of the fundamental parallelogram: coordinates in [0,1)^2g.
class TorusPoint {
  public:
    TorusPoint() = default;
    // Validates the [0,1) range; use reduce_mod_lattice for raw vectors.
    explicit TorusPoint(const Eigen::VectorXd& coords);

    const Eigen::VectorXd& coords() const { return coords_; }
    int dim2g() const { return static_cast<int>(coords_.size()); }

  private:
    Eigen::VectorXd coords_;
};

// Torsion point with exact rational coordinates in [0,1).
class TorsionPoint {
  public:
    TorsionPoint() = default;
    explicit TorsionPoint(std::vector<Rational> coords);

    const std::vector<Rational>& coords() const { return coords_; }
    TorusPoint to_torus_point() const;
    bool operator==(const TorsionPoint& o) const { return coords_ == o.coords_; }

  private:
    std::vector<Rational> coords_;
};

// Integer 2g x 2g matrix acting on lattice coordinates. General matrices
// must commute with the complex structure J induced by omega (tolerance
// 1e-9), otherwise they are not C-linear and are rejected.
class Endomorphism {
  public:
    static Endomorphism scalar(int g, std::int64_t n);
    // Throws NotComplexLinearError if matrix fails the J-commutation test.
    static Endomorphism general(const AbelianTorus& torus, const Eigen::MatrixXi& matrix);

    const Eigen::MatrixXi& matrix() const { return matrix_; }
    bool is_scalar() const { return is_scalar_; }
    std::int64_t scalar_value() const { return scalar_; }

  private:
    Eigen::MatrixXi matrix_;
    bool is_scalar_ = false;
    std::int64_t scalar_ = 0;
};

// Componentwise fractional part; result lies in [0,1)^2g.
TorusPoint reduce_mod_lattice(const Eigen::VectorXd& v);
Eigen::VectorXd frac_vector(const Eigen::VectorXd& v);

TorusPoint apply_endomorphism(const Endomorphism& phi, const TorusPoint& p);
TorusPoint scalar_multiple(std::int64_t n, const TorusPoint& p);

// lcm of the reduced denominators; the exact order of t in the torus group.
std::int64_t torsion_order(const TorsionPoint& t);
TorsionPoint scalar_multiple(std::int64_t n, const TorsionPoint& t);

// Distance between torus points: minimum over the 3^2g nearest lattice
// translates of the ambient Euclidean distance.
double torus_distance(const AbelianTorus& torus, const TorusPoint& p, const TorusPoint& q);
double torus_distance(const AbelianTorus& torus, const Eigen::VectorXd& p_coords,
                      const Eigen::VectorXd& q_coords);

} // namespace abelint
