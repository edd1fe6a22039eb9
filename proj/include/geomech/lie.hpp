#ifndef GEOMECH_LIE_HPP
#define GEOMECH_LIE_HPP

// SO(3) and SE(3), their Lie algebras, the duals, and the (co)adjoint machinery.
//
// Conventions (see docs/conventions.md):
//  - so(3) is R^3 with the cross product, hat(v) w = v x w.
//  - se(3) = so(3) x R^3 with bracket
//        [(w1,u1),(w2,u2)] = (w1 x w2, w1 x u2 - w2 x u1),
//    which is the commutator of the 4x4 matrices [[hat(w), u], [0, 0]].
//  - SE(3) elements (A, a) act as x -> A x + a; (A,a)(B,b) = (AB, A b + a).
//  - The pairing between an algebra and its dual is the Euclidean dot
//    product of components.  Every dual-side formula (coadjoint action,
//    ad*) is obtained as a transpose under that pairing.
//  - coadjoint_action(g, mu) is Ad*_{g^-1} mu, i.e. the left coadjoint
//    action: <coadjoint_action(g, mu), xi> = <mu, Ad_{g^-1} xi>.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <string_view>

#include "geomech/errors.hpp"

namespace geomech {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Which group / algebra an object belongs to: SO(3) & so(3), or SE(3) & se(3).
enum class Algebra : std::uint8_t { so3, se3 };

constexpr int dimension(Algebra a) noexcept { return a == Algebra::so3 ? 3 : 6; }
std::string_view to_string(Algebra a) noexcept;

namespace detail {

// Shared storage for algebra and dual vectors: components are held in a
// fixed 6-vector whose tail is zero for so3.
template <class Derived>
class Coordinates {
 public:
  Algebra algebra() const noexcept { return algebra_; }
  int dim() const noexcept { return dimension(algebra_); }

  double operator[](int i) const { return c_[i]; }

  /// Components as a dynamically sized vector of length dim().
  VecX components() const { return c_.head(dim()); }
  /// Zero-padded 6-vector storage.
  const Vec6& padded() const noexcept { return c_; }

  double max_abs() const { return c_.head(dim()).cwiseAbs().maxCoeff(); }
  double norm() const { return c_.head(dim()).norm(); }

  friend Derived operator+(const Derived& a, const Derived& b) {
    check_same(a, b);
    return make(a.algebra_, a.c_ + b.c_);
  }
  friend Derived operator-(const Derived& a, const Derived& b) {
    check_same(a, b);
    return make(a.algebra_, a.c_ - b.c_);
  }
  friend Derived operator-(const Derived& a) { return make(a.algebra_, -a.c_); }
  friend Derived operator*(double s, const Derived& a) { return make(a.algebra_, s * a.c_); }
  friend Derived operator*(const Derived& a, double s) { return s * a; }

 protected:
  Coordinates(Algebra a, const Vec6& c) : algebra_(a), c_(c) {
    if (a == Algebra::so3) c_.tail<3>().setZero();
    if (!c_.allFinite()) throw NonFiniteValue("non-finite component in algebra/dual vector");
  }

  static void check_same(const Derived& a, const Derived& b) {
    if (a.algebra_ != b.algebra_) throw TagMismatch("mixed so3/se3 operands");
  }

  Algebra algebra_;
  Vec6 c_;

 private:
  static Derived make(Algebra a, const Vec6& c) { return Derived(a, c); }
};

}  // namespace detail

/// Element of so(3) (angular rate w) or se(3) (angular rate w, linear rate u).
class AlgebraVector : public detail::Coordinates<AlgebraVector> {
 public:
  static AlgebraVector so3(const Vec3& w);
  static AlgebraVector se3(const Vec3& w, const Vec3& u);
  static AlgebraVector zero(Algebra a) { return AlgebraVector(a, Vec6::Zero()); }
  static AlgebraVector basis(Algebra a, int i);
  /// Throws InvalidParameter when c.size() != dimension(a).
  static AlgebraVector from_components(Algebra a, const VecX& c);

  Vec3 angular() const { return c_.head<3>(); }
  Vec3 linear() const { return c_.tail<3>(); }

 private:
  friend class detail::Coordinates<AlgebraVector>;
  AlgebraVector(Algebra a, const Vec6& c) : Coordinates(a, c) {}
};

/// Element of so*(3) (body momentum Pi) or se*(3) (Pi and the advected vector Gamma).
class DualVector : public detail::Coordinates<DualVector> {
 public:
  static DualVector so3(const Vec3& pi);
  static DualVector se3(const Vec3& pi, const Vec3& gamma);
  static DualVector zero(Algebra a) { return DualVector(a, Vec6::Zero()); }
  static DualVector basis(Algebra a, int i);
  static DualVector from_components(Algebra a, const VecX& c);

  Vec3 pi() const { return c_.head<3>(); }
  Vec3 gamma() const { return c_.tail<3>(); }

 private:
  friend class detail::Coordinates<DualVector>;
  DualVector(Algebra a, const Vec6& c) : Coordinates(a, c) {}
};

/// Element of SO(3) (rotation R) or SE(3) (rotation R, translation a).
/// Rotations are kept orthonormal: whenever the orthogonality defect
/// max|R^T R - I| exceeds 1e-10 the matrix is replaced by its polar factor.
class GroupElement {
 public:
  static GroupElement identity(Algebra a);
  /// Accepts matrices within 1e-6 of SO(3); rejects reflections.
  static GroupElement so3(const Mat3& R);
  static GroupElement se3(const Mat3& R, const Vec3& a);

  Algebra algebra() const noexcept { return algebra_; }
  const Mat3& rotation() const noexcept { return R_; }
  const Vec3& translation() const noexcept { return a_; }

  GroupElement operator*(const GroupElement& other) const;
  GroupElement inverse() const;

  /// max|R^T R - I|
  double orthogonality_defect() const;

 private:
  GroupElement(Algebra a, const Mat3& R, const Vec3& t);

  Algebra algebra_;
  Mat3 R_;
  Vec3 a_;
};

inline constexpr double kOrthonormalizeThreshold = 1e-10;

/// 3x3 skew matrix with hat(v) w = v x w.
Mat3 hat(const Vec3& v);
/// Inverse of hat; throws DomainError when the symmetric part exceeds 1e-9 (max-norm).
Vec3 vee(const Mat3& m);

/// Closest rotation in the Frobenius sense (polar factor), det = +1.
Mat3 project_to_rotation(const Mat3& m);

GroupElement exp_group(const AlgebraVector& xi);
/// Local inverse of exp_group; throws DomainError for rotation angles >= pi - 1e-6.
AlgebraVector log_group(const GroupElement& g);

/// Euclidean pairing <mu, xi>.
double pairing(const DualVector& mu, const AlgebraVector& xi);

/// Lie bracket [xi, eta].
AlgebraVector ad(const AlgebraVector& xi, const AlgebraVector& eta);
/// Matrix of eta -> [xi, eta].
MatX ad_matrix(const AlgebraVector& xi);
/// ad*_xi mu, defined by <coad(xi, mu), eta> = <mu, [xi, eta]>.
DualVector coad(const AlgebraVector& xi, const DualVector& mu);

/// Matrix of Ad_g acting on algebra components.
MatX adjoint_matrix(const GroupElement& g);
AlgebraVector adjoint_action(const GroupElement& g, const AlgebraVector& xi);
/// Ad*_{g^-1} mu, defined by <coadjoint_action(g, mu), xi> = <mu, Ad_{g^-1} xi>.
DualVector coadjoint_action(const GroupElement& g, const DualVector& mu);

}  // namespace geomech

#endif  // GEOMECH_LIE_HPP
