#ifndef GEOMECH_SYSTEMS_HPP
#define GEOMECH_SYSTEMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geomech/poisson.hpp"

namespace geomech {

/// Principal moments of inertia (kg m^2).
struct RigidBodyParams {
  Vec3 inertia = Vec3(1.0, 2.0, 3.0);

  /// Throws InvalidParameter unless every moment is finite and positive.
  void validate() const;
};

/// Rigid body with a fixed point in a uniform gravitational field.
/// Only the product m*g*h enters the dynamics; the individual factors are
/// kept for documentation.  A zero product is accepted and reduces the top
/// to a free rigid body.
struct HeavyTopParams {
  Vec3 inertia = Vec3(1.0, 2.0, 3.0);
  double mass = 1.0;     // kg
  double gravity = 1.0;  // m/s^2
  double length = 1.0;   // m, fixed point to center of mass
  Vec3 chi = Vec3::UnitZ();  // body-frame unit vector towards the center of mass

  static HeavyTopParams with_mgh(const Vec3& inertia, double mgh, const Vec3& chi);

  double mgh() const noexcept { return mass * gravity * length; }
  /// Throws InvalidParameter: inertia > 0, m, g, h >= 0, |chi| = 1 within 1e-12.
  void validate() const;
};

struct NamedField {
  std::string name;
  ScalarField field;
};

/// A Lie-Poisson system on so*(3) or se*(3): reduced Hamiltonian plus its Casimirs.
struct LiePoissonSystem {
  std::string label;
  Algebra algebra = Algebra::so3;
  ScalarField hamiltonian;
  std::vector<NamedField> casimirs;
  BracketSign sign = BracketSign::minus;
  /// Physical model behind the Hamiltonian, when it is one of the shipped ones.
  std::variant<std::monostate, RigidBodyParams, HeavyTopParams> model;

  const RigidBodyParams* rigid_body() const { return std::get_if<RigidBodyParams>(&model); }
  const HeavyTopParams* heavy_top() const { return std::get_if<HeavyTopParams>(&model); }
};

/// H(Pi) = 1/2 sum Pi_i^2 / I_i on so*(3); Casimir |Pi|^2 / 2.
LiePoissonSystem rigid_body_system(const RigidBodyParams& p);

/// H(Pi, Gamma) = 1/2 sum Pi_i^2 / I_i + mgh Gamma . chi on se*(3);
/// Casimirs Pi . Gamma and |Gamma|^2 / 2.
LiePoissonSystem heavy_top_system(const HeavyTopParams& p);

struct LegendreResult {
  DualVector momentum;
  double energy;
};

/// Pi = I Omega, H = Pi . Omega - L with L = 1/2 Omega . I Omega.
LegendreResult legendre(const Vec3& inertia, const AlgebraVector& omega);
/// Same for a full symmetric positive definite inertia tensor.
LegendreResult legendre(const Mat3& inertia, const AlgebraVector& omega);

/// Spatial momentum of the left-trivialized state (g, mu_body): the
/// momentum map of the cotangent lift of left translation, Ad*_{g^-1} mu.
/// On SO(3) this is A Pi.
DualVector momentum_map(const GroupElement& g, const DualVector& mu_body);

// ---------------------------------------------------------------------------
// Canonical systems on T*R^n

/// Canonical Hamiltonian H(q, p) on T*R^n, with optional analytic partials.
struct CanonicalSystem {
  using Hamiltonian = std::function<double(const VecX& q, const VecX& p)>;
  using Partials = std::function<std::pair<VecX, VecX>(const VecX& q, const VecX& p)>;  // (dH/dq, dH/dp)

  std::string label;
  int dimension = 1;
  Hamiltonian hamiltonian;
  Partials partials;
  double fd_step = 1e-6;

  double energy(const VecX& q, const VecX& p) const;
  /// (dH/dq, dH/dp), analytic when available.
  std::pair<VecX, VecX> gradient(const VecX& q, const VecX& p) const;
  /// Canonical field (dH/dp, -dH/dq) stacked into a 2n vector.
  VecX vector_field(const VecX& q, const VecX& p) const;
};

CanonicalSystem canonical_system(int n, CanonicalSystem::Hamiltonian h,
                                 CanonicalSystem::Partials partials = {}, std::string label = "canonical");

/// H = 1/2 (|p|^2 + |q|^2)
CanonicalSystem harmonic_oscillator(int n);
/// H = 1/2 |p|^2
CanonicalSystem free_particle(int n);

}  // namespace geomech

#endif  // GEOMECH_SYSTEMS_HPP
