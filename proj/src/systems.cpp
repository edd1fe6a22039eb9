#include "geomech/systems.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace geomech {

void RigidBodyParams::validate() const {
  if (!inertia.allFinite() || (inertia.array() <= 0.0).any()) {
    throw InvalidParameter("moments of inertia must be positive");
  }
}

HeavyTopParams HeavyTopParams::with_mgh(const Vec3& inertia, double mgh, const Vec3& chi) {
  HeavyTopParams p;
  p.inertia = inertia;
  p.mass = mgh;
  p.gravity = 1.0;
  p.length = 1.0;
  p.chi = chi;
  return p;
}

void HeavyTopParams::validate() const {
  RigidBodyParams{inertia}.validate();
  for (double v : {mass, gravity, length}) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidParameter("mass, gravity and length must be nonnegative");
  }
  if (!chi.allFinite() || std::abs(chi.norm() - 1.0) > 1e-12) {
    throw InvalidParameter("chi must be a unit vector");
  }
}

namespace {

ScalarField half_norm_squared(Algebra a, int offset) {
  const int n = dimension(a);
  ScalarField f;
  f.value = [offset](const DualVector& mu) { return 0.5 * mu.padded().segment<3>(offset).squaredNorm(); };
  f.gradient = [a, offset](const DualVector& mu) {
    Vec6 g = Vec6::Zero();
    g.segment<3>(offset) = mu.padded().segment<3>(offset);
    return AlgebraVector::from_components(a, g.head(dimension(a)));
  };
  f.hessian = [n, offset](const DualVector&) {
    MatX h = MatX::Zero(n, n);
    h.block(offset, offset, 3, 3).setIdentity();
    return h;
  };
  return f;
}

}  // namespace

LiePoissonSystem rigid_body_system(const RigidBodyParams& p) {
  p.validate();
  const Vec3 inv = p.inertia.cwiseInverse();

  LiePoissonSystem sys;
  sys.label = "rigid-body";
  sys.algebra = Algebra::so3;
  sys.model = p;
  sys.hamiltonian.value = [inv](const DualVector& mu) {
    const Vec3 pi = mu.pi();
    return 0.5 * pi.dot(inv.cwiseProduct(pi));
  };
  sys.hamiltonian.gradient = [inv](const DualVector& mu) { return AlgebraVector::so3(inv.cwiseProduct(mu.pi())); };
  sys.hamiltonian.hessian = [inv](const DualVector&) { return MatX(inv.asDiagonal()); };
  sys.casimirs.push_back({"|Pi|^2/2", half_norm_squared(Algebra::so3, 0)});
  return sys;
}

LiePoissonSystem heavy_top_system(const HeavyTopParams& p) {
  p.validate();
  const Vec3 inv = p.inertia.cwiseInverse();
  const Vec3 force = p.mgh() * p.chi;

  LiePoissonSystem sys;
  sys.label = "heavy-top";
  sys.algebra = Algebra::se3;
  sys.model = p;
  sys.hamiltonian.value = [inv, force](const DualVector& mu) {
    const Vec3 pi = mu.pi();
    return 0.5 * pi.dot(inv.cwiseProduct(pi)) + force.dot(mu.gamma());
  };
  sys.hamiltonian.gradient = [inv, force](const DualVector& mu) {
    return AlgebraVector::se3(inv.cwiseProduct(mu.pi()), force);
  };
  sys.hamiltonian.hessian = [inv](const DualVector&) {
    MatX h = MatX::Zero(6, 6);
    h.topLeftCorner<3, 3>() = inv.asDiagonal();
    return h;
  };

  ScalarField pi_dot_gamma;
  pi_dot_gamma.value = [](const DualVector& mu) { return mu.pi().dot(mu.gamma()); };
  pi_dot_gamma.gradient = [](const DualVector& mu) { return AlgebraVector::se3(mu.gamma(), mu.pi()); };
  pi_dot_gamma.hessian = [](const DualVector&) {
    MatX h = MatX::Zero(6, 6);
    h.topRightCorner<3, 3>().setIdentity();
    h.bottomLeftCorner<3, 3>().setIdentity();
    return h;
  };
  sys.casimirs.push_back({"Pi.Gamma", pi_dot_gamma});
  sys.casimirs.push_back({"|Gamma|^2/2", half_norm_squared(Algebra::se3, 3)});
  return sys;
}

LegendreResult legendre(const Mat3& inertia, const AlgebraVector& omega) {
  if (omega.algebra() != Algebra::so3) throw TagMismatch("legendre expects an so3 angular velocity");
  if (!inertia.allFinite() || (inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      inertia.llt().info() != Eigen::Success) {
    throw InvalidParameter("inertia tensor must be symmetric positive definite");
  }
  const Vec3 w = omega.angular();
  const Vec3 pi = inertia * w;
  const double lagrangian = 0.5 * w.dot(inertia * w);
  return {DualVector::so3(pi), pi.dot(w) - lagrangian};
}

LegendreResult legendre(const Vec3& inertia, const AlgebraVector& omega) {
  RigidBodyParams{inertia}.validate();
  return legendre(Mat3(inertia.asDiagonal()), omega);
}

DualVector momentum_map(const GroupElement& g, const DualVector& mu_body) {
  return coadjoint_action(g, mu_body);
}

// ---------------------------------------------------------------------------

double CanonicalSystem::energy(const VecX& q, const VecX& p) const {
  if (q.size() != dimension || p.size() != dimension) throw InvalidParameter("canonical state has wrong dimension");
  const double e = hamiltonian(q, p);
  if (!std::isfinite(e)) throw NonFiniteValue("canonical Hamiltonian is not finite");
  return e;
}

std::pair<VecX, VecX> CanonicalSystem::gradient(const VecX& q, const VecX& p) const {
  if (partials) {
    auto d = partials(q, p);
    if (!d.first.allFinite() || !d.second.allFinite()) throw NonFiniteValue("canonical gradient is not finite");
    return d;
  }
  VecX dq(dimension), dp(dimension);
  for (int i = 0; i < dimension; ++i) {
    const double hq = std::max(fd_step, fd_step * std::abs(q[i]));
    const double hp = std::max(fd_step, fd_step * std::abs(p[i]));
    VecX qp = q, qm = q, pp = p, pm = p;
    qp[i] += hq;
    qm[i] -= hq;
    pp[i] += hp;
    pm[i] -= hp;
    dq[i] = (energy(qp, p) - energy(qm, p)) / (2.0 * hq);
    dp[i] = (energy(q, pp) - energy(q, pm)) / (2.0 * hp);
  }
  return {dq, dp};
}

VecX CanonicalSystem::vector_field(const VecX& q, const VecX& p) const {
  const auto [dq, dp] = gradient(q, p);
  VecX out(2 * dimension);
  out << dp, -dq;
  return out;
}

CanonicalSystem canonical_system(int n, CanonicalSystem::Hamiltonian h, CanonicalSystem::Partials partials,
                                 std::string label) {
  if (n < 1) throw InvalidParameter("canonical dimension must be at least 1");
  if (!h) throw InvalidParameter("canonical Hamiltonian is missing");
  CanonicalSystem sys;
  sys.label = std::move(label);
  sys.dimension = n;
  sys.hamiltonian = std::move(h);
  sys.partials = std::move(partials);
  return sys;
}

CanonicalSystem harmonic_oscillator(int n) {
  return canonical_system(
      n, [](const VecX& q, const VecX& p) { return 0.5 * (p.squaredNorm() + q.squaredNorm()); },
      [](const VecX& q, const VecX& p) { return std::pair<VecX, VecX>(q, p); }, "harmonic-oscillator");
}

CanonicalSystem free_particle(int n) {
  return canonical_system(
      n, [](const VecX&, const VecX& p) { return 0.5 * p.squaredNorm(); },
      [](const VecX& q, const VecX& p) { return std::pair<VecX, VecX>(VecX::Zero(q.size()), p); }, "free-particle");
}

}  // namespace geomech
