#include "abelint/torus.hpp"

#include <cmath>

namespace abelint {

namespace {
constexpr double kSymmetryTol = 1e-12;
constexpr double kPositivityTol = 1e-10;
constexpr double kComplexLinearTol = 1e-9;
} // namespace

AbelianTorus::AbelianTorus(const Eigen::MatrixXcd& omega, bool assume_simple)
    : assume_simple_(assume_simple), omega_(omega) {
    if (omega.rows() != omega.cols() || omega.rows() < 1)
        throw ValidationError("period matrix must be square and nonempty");
    g_ = static_cast<int>(omega.rows());

    for (int i = 0; i < g_; ++i)
        for (int j = i + 1; j < g_; ++j)
            if (std::abs(omega(i, j) - omega(j, i)) > kSymmetryTol)
                throw NonSymmetricError("period matrix is not symmetric (entry " +
                                        std::to_string(i) + "," + std::to_string(j) + ")");

    Eigen::MatrixXd im = omega.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (im + im.transpose()));
    im_eig_min_ = es.eigenvalues().minCoeff();
    im_eig_max_ = es.eigenvalues().maxCoeff();
    if (im_eig_min_ <= kPositivityTol)
        throw NotPositiveDefiniteError("Im(omega) is not positive definite (min eigenvalue " +
                                       std::to_string(im_eig_min_) + ")");

    const int n = 2 * g_;
    basis_.setZero(n, n);
    basis_.topLeftCorner(g_, g_).setIdentity();
    basis_.topRightCorner(g_, g_) = omega.real();
    basis_.bottomRightCorner(g_, g_) = omega.imag();
    basis_inv_ = basis_.inverse();

    // Enumerate {-1,0,1}^2g translates for the torus metric.
    const int total = static_cast<int>(std::pow(3, n));
    near_translates_.reserve(total);
    near_translate_ints_.reserve(total);
    Eigen::VectorXi m(n);
    for (int code = 0; code < total; ++code) {
        int c = code;
        for (int k = 0; k < n; ++k) { m[k] = c % 3 - 1; c /= 3; }
        Eigen::VectorXd md = m.cast<double>();
        near_translate_ints_.push_back(m);
        near_translates_.push_back(lift(md));
    }
}

Eigen::VectorXcd AbelianTorus::lift(const Eigen::VectorXd& coords) const {
    Eigen::VectorXcd z = coords.head(g_).cast<std::complex<double>>();
    z += omega_ * coords.tail(g_).cast<std::complex<double>>();
    return z;
}

Eigen::VectorXd AbelianTorus::coords_of(const Eigen::VectorXcd& z) const {
    Eigen::VectorXd ri(2 * g_);
    ri.head(g_) = z.real();
    ri.tail(g_) = z.imag();
    return basis_inv_ * ri;
}

TorusPoint::TorusPoint(const Eigen::VectorXd& coords) : coords_(coords) {
    for (int i = 0; i < coords.size(); ++i)
        if (!(coords[i] >= 0.0 && coords[i] < 1.0))
            throw ValidationError("torus point coordinate outside [0,1)");
}

TorsionPoint::TorsionPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
    for (const auto& c : coords_) {
        if (c.den <= 0) throw ValidationError("torsion point: nonpositive denominator");
        if (c.num < 0 || c.num >= c.den)
            throw ValidationError("torsion point coordinate outside [0,1)");
    }
}

TorusPoint TorsionPoint::to_torus_point() const {
    Eigen::VectorXd v(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) v[static_cast<int>(i)] = coords_[i].to_double();
    return reduce_mod_lattice(v);
}

Endomorphism Endomorphism::scalar(int g, std::int64_t n) {
    Endomorphism e;
    e.matrix_ = Eigen::MatrixXi::Identity(2 * g, 2 * g) * static_cast<int>(n);
    e.is_scalar_ = true;
    e.scalar_ = n;
    return e;
}

Endomorphism Endomorphism::general(const AbelianTorus& torus, const Eigen::MatrixXi& matrix) {
    const int n = 2 * torus.g();
    if (matrix.rows() != n || matrix.cols() != n)
        throw ValidationError("endomorphism matrix has wrong shape");
    // J in lattice coordinates: conjugate multiplication-by-i by the period basis.
    const int g = torus.g();
    Eigen::MatrixXd jstd = Eigen::MatrixXd::Zero(n, n);
    jstd.topRightCorner(g, g) = -Eigen::MatrixXd::Identity(g, g);
    jstd.bottomLeftCorner(g, g) = Eigen::MatrixXd::Identity(g, g);
    Eigen::MatrixXd jlat = torus.basis_inverse() * jstd * torus.basis();
    Eigen::MatrixXd md = matrix.cast<double>();
    const double comm = (md * jlat - jlat * md).cwiseAbs().maxCoeff();
    if (comm > kComplexLinearTol)
        throw NotComplexLinearError("matrix does not commute with the complex structure (residual " +
                                    std::to_string(comm) + ")");
    Endomorphism e;
    e.matrix_ = matrix;
    return e;
}

Eigen::VectorXd frac_vector(const Eigen::VectorXd& v) {
    Eigen::VectorXd r(v.size());
    for (int i = 0; i < v.size(); ++i) {
        double f = v[i] - std::floor(v[i]);
        if (f >= 1.0) f = 0.0; // rounding guard at the upper cell face
        r[i] = f;
    }
    return r;
}

TorusPoint reduce_mod_lattice(const Eigen::VectorXd& v) { return TorusPoint(frac_vector(v)); }

TorusPoint apply_endomorphism(const Endomorphism& phi, const TorusPoint& p) {
    Eigen::VectorXd w = phi.matrix().cast<double>() * p.coords();
    return reduce_mod_lattice(w);
}

TorusPoint scalar_multiple(std::int64_t n, const TorusPoint& p) {
    return reduce_mod_lattice(static_cast<double>(n) * p.coords());
}

std::int64_t torsion_order(const TorsionPoint& t) {
    std::int64_t k = 1;
    for (const auto& c : t.coords()) k = checked_lcm(k, c.den);
    return k;
}

TorsionPoint scalar_multiple(std::int64_t n, const TorsionPoint& t) {
    std::vector<Rational> out;
    out.reserve(t.coords().size());
    for (const auto& c : t.coords()) out.push_back((Rational(n) * c).mod1());
    return TorsionPoint(std::move(out));
}

double torus_distance(const AbelianTorus& torus, const Eigen::VectorXd& p_coords,
                      const Eigen::VectorXd& q_coords) {
    const Eigen::VectorXcd z0 = torus.lift(p_coords - q_coords);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : torus.near_translates()) {
        const double d = (z0 - t).norm();
        if (d < best) best = d;
    }
    return best;
}

double torus_distance(const AbelianTorus& torus, const TorusPoint& p, const TorusPoint& q) {
    if (p.dim2g() != q.dim2g()) throw ValidationError("torus_distance: dimension mismatch");
    return torus_distance(torus, p.coords(), q.coords());
}

} // namespace abelint
