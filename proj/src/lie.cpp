#include "geomech/lie.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace geomech {

std::string_view to_string(Algebra a) noexcept { return a == Algebra::so3 ? "so3" : "se3"; }

namespace {

void require_same(Algebra a, Algebra b, const char* what) {
  if (a != b) throw TagMismatch(std::string(what) + ": mixed so3/se3 operands");
}

Vec6 pad(const Vec3& head, const Vec3& tail) {
  Vec6 c;
  c << head, tail;
  return c;
}

Vec6 padded_from(Algebra a, const VecX& c) {
  if (c.size() != dimension(a)) {
    throw InvalidParameter("expected " + std::to_string(dimension(a)) + " components for " +
                           std::string(to_string(a)) + ", got " + std::to_string(c.size()));
  }
  Vec6 out = Vec6::Zero();
  out.head(c.size()) = c;
  return out;
}

double defect_of(const Mat3& R) { return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff(); }

// Coefficients of the Rodrigues-type series, switching to Taylor expansions
// near zero where the closed forms lose accuracy.
struct ExpCoefficients {
  double a;  // sin(t)/t
  double b;  // (1 - cos t)/t^2
  double c;  // (t - sin t)/t^3
};

ExpCoefficients exp_coefficients(double t) {
  const double t2 = t * t;
  if (t < 1e-4) {
    return {1.0 - t2 / 6.0 + t2 * t2 / 120.0, 0.5 - t2 / 24.0 + t2 * t2 / 720.0,
            1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0};
  }
  return {std::sin(t) / t, (1.0 - std::cos(t)) / t2, (t - std::sin(t)) / (t2 * t)};
}

Mat3 rotation_exp(const Vec3& w) {
  const Mat3 W = hat(w);
  const auto k = exp_coefficients(w.norm());
  return Mat3::Identity() + k.a * W + k.b * W * W;
}

// Left Jacobian of SO(3); maps the se(3) linear rate to the translation of exp.
Mat3 left_jacobian(const Vec3& w) {
  const Mat3 W = hat(w);
  const auto k = exp_coefficients(w.norm());
  return Mat3::Identity() + k.b * W + k.c * W * W;
}

Mat3 left_jacobian_inverse(const Vec3& w) {
  const double t = w.norm();
  const double t2 = t * t;
  double d;  // (1 - (t sin t) / (2 (1 - cos t))) / t^2
  if (t < 1e-4) {
    d = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  } else {
    d = (1.0 - t * std::sin(t) / (2.0 * (1.0 - std::cos(t)))) / t2;
  }
  const Mat3 W = hat(w);
  return Mat3::Identity() - 0.5 * W + d * W * W;
}

}  // namespace

AlgebraVector AlgebraVector::so3(const Vec3& w) { return AlgebraVector(Algebra::so3, pad(w, Vec3::Zero())); }
AlgebraVector AlgebraVector::se3(const Vec3& w, const Vec3& u) { return AlgebraVector(Algebra::se3, pad(w, u)); }
AlgebraVector AlgebraVector::basis(Algebra a, int i) {
  if (i < 0 || i >= dimension(a)) throw InvalidParameter("basis index out of range");
  Vec6 c = Vec6::Zero();
  c[i] = 1.0;
  return AlgebraVector(a, c);
}
AlgebraVector AlgebraVector::from_components(Algebra a, const VecX& c) {
  return AlgebraVector(a, padded_from(a, c));
}

DualVector DualVector::so3(const Vec3& pi) { return DualVector(Algebra::so3, pad(pi, Vec3::Zero())); }
DualVector DualVector::se3(const Vec3& pi, const Vec3& gamma) { return DualVector(Algebra::se3, pad(pi, gamma)); }
DualVector DualVector::basis(Algebra a, int i) {
  if (i < 0 || i >= dimension(a)) throw InvalidParameter("basis index out of range");
  Vec6 c = Vec6::Zero();
  c[i] = 1.0;
  return DualVector(a, c);
}
DualVector DualVector::from_components(Algebra a, const VecX& c) { return DualVector(a, padded_from(a, c)); }

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(Algebra a, const Mat3& R, const Vec3& t) : algebra_(a), R_(R), a_(t) {
  if (!R_.allFinite() || !a_.allFinite()) throw NonFiniteValue("non-finite group element");
  if (a == Algebra::so3) a_.setZero();
  if (defect_of(R_) > kOrthonormalizeThreshold) R_ = project_to_rotation(R_);
}

GroupElement GroupElement::identity(Algebra a) { return GroupElement(a, Mat3::Identity(), Vec3::Zero()); }

static void validate_rotation(const Mat3& R) {
  if (!R.allFinite()) throw NonFiniteValue("non-finite rotation matrix");
  if (defect_of(R) > 1e-6 || R.determinant() <= 0.0) {
    throw InvalidParameter("matrix is not a rotation (orthogonality defect or det <= 0)");
  }
}

GroupElement GroupElement::so3(const Mat3& R) {
  validate_rotation(R);
  return GroupElement(Algebra::so3, R, Vec3::Zero());
}

GroupElement GroupElement::se3(const Mat3& R, const Vec3& a) {
  validate_rotation(R);
  return GroupElement(Algebra::se3, R, a);
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  require_same(algebra_, other.algebra_, "group product");
  return GroupElement(algebra_, R_ * other.R_, R_ * other.a_ + a_);
}

GroupElement GroupElement::inverse() const {
  const Mat3 Rt = R_.transpose();
  return GroupElement(algebra_, Rt, -(Rt * a_));
}

double GroupElement::orthogonality_defect() const { return defect_of(R_); }

// ---------------------------------------------------------------------------

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  const double sym = (0.5 * (m + m.transpose())).cwiseAbs().maxCoeff();
  if (!(sym <= 1e-9)) throw DomainError("vee: matrix is not skew-symmetric (symmetric part " + std::to_string(sym) + ")");
  return Vec3(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1)));
}

Mat3 project_to_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) U.col(2) *= -1.0;
  return U * V.transpose();
}

GroupElement exp_group(const AlgebraVector& xi) {
  const Vec3 w = xi.angular();
  if (xi.algebra() == Algebra::so3) return GroupElement::so3(rotation_exp(w));
  return GroupElement::se3(rotation_exp(w), left_jacobian(w) * xi.linear());
}

AlgebraVector log_group(const GroupElement& g) {
  const Mat3& R = g.rotation();
  const Vec3 s = 0.5 * Vec3(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  const double c = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
  const double t = std::atan2(s.norm(), c);
  if (t >= std::numbers::pi - 1e-6) throw DomainError("log_group: rotation angle too close to pi");
  double scale;  // t / sin t
  if (t < 1e-4) {
    scale = 1.0 + t * t / 6.0 + 7.0 * t * t * t * t / 360.0;
  } else {
    scale = t / std::sin(t);
  }
  const Vec3 w = scale * s;
  if (g.algebra() == Algebra::so3) return AlgebraVector::so3(w);
  return AlgebraVector::se3(w, left_jacobian_inverse(w) * g.translation());
}

double pairing(const DualVector& mu, const AlgebraVector& xi) {
  require_same(mu.algebra(), xi.algebra(), "pairing");
  return mu.padded().dot(xi.padded());
}

AlgebraVector ad(const AlgebraVector& xi, const AlgebraVector& eta) {
  require_same(xi.algebra(), eta.algebra(), "ad");
  const Vec3 w1 = xi.angular();
  const Vec3 w2 = eta.angular();
  if (xi.algebra() == Algebra::so3) return AlgebraVector::so3(w1.cross(w2));
  return AlgebraVector::se3(w1.cross(w2), w1.cross(eta.linear()) - w2.cross(xi.linear()));
}

MatX ad_matrix(const AlgebraVector& xi) {
  const int n = xi.dim();
  MatX m(n, n);
  for (int i = 0; i < n; ++i) m.col(i) = ad(xi, AlgebraVector::basis(xi.algebra(), i)).components();
  return m;
}

DualVector coad(const AlgebraVector& xi, const DualVector& mu) {
  require_same(xi.algebra(), mu.algebra(), "coad");
  return DualVector::from_components(mu.algebra(), ad_matrix(xi).transpose() * mu.components());
}

MatX adjoint_matrix(const GroupElement& g) {
  const Mat3& R = g.rotation();
  if (g.algebra() == Algebra::so3) return R;
  MatX m = MatX::Zero(6, 6);
  m.topLeftCorner<3, 3>() = R;
  m.bottomLeftCorner<3, 3>() = hat(g.translation()) * R;
  m.bottomRightCorner<3, 3>() = R;
  return m;
}

AlgebraVector adjoint_action(const GroupElement& g, const AlgebraVector& xi) {
  require_same(g.algebra(), xi.algebra(), "adjoint_action");
  return AlgebraVector::from_components(xi.algebra(), adjoint_matrix(g) * xi.components());
}

DualVector coadjoint_action(const GroupElement& g, const DualVector& mu) {
  require_same(g.algebra(), mu.algebra(), "coadjoint_action");
  return DualVector::from_components(mu.algebra(), adjoint_matrix(g.inverse()).transpose() * mu.components());
}

}  // namespace geomech
