#ifndef GEOMECH_DYNAMICS_HPP
#define GEOMECH_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geomech/systems.hpp"

namespace geomech {

enum class Scheme { explicit_rk4, implicit_midpoint, coadjoint_splitting };

std::string_view to_string(Scheme s) noexcept;
/// Parses "explicit-rk4", "implicit-midpoint", "coadjoint-splitting".
Scheme parse_scheme(std::string_view name);

struct IntegratorChoice {
  Scheme scheme = Scheme::explicit_rk4;
  double dt = 1e-3;  // s
  double newton_tol = 1e-12;
  int newton_max_iter = 50;

  void validate() const;
};

/// Attitude co-evolved with the body momentum of a free rigid body.
struct BodyState {
  GroupElement attitude = GroupElement::identity(Algebra::so3);
  DualVector momentum = DualVector::zero(Algebra::so3);
};

/// One step of nu' = X_h(nu).  Implicit midpoint throws ConvergenceError
/// when Newton does not reach newton_tol within newton_max_iter iterations.
DualVector step(const LiePoissonSystem& sys, const DualVector& state, const IntegratorChoice& choice);

/// One step of the coupled (A, Pi) flow A' = A hat(Omega), Pi' = X_h(Pi) on so*(3).
/// Each scheme advances A consistently with its momentum update so that the
/// spatial momentum A Pi is a discrete invariant of the midpoint and
/// coadjoint-splitting schemes.
BodyState step(const LiePoissonSystem& sys, const BodyState& state, const IntegratorChoice& choice);

/// One step of the canonical equations on T*R^n; coadjoint-splitting is rejected.
std::pair<VecX, VecX> step(const CanonicalSystem& sys, const VecX& q, const VecX& p, const IntegratorChoice& choice);

struct Trajectory {
  std::string system;
  std::vector<std::string> state_labels;
  std::vector<std::string> casimir_names;
  std::vector<double> times;
  std::vector<VecX> states;
  std::vector<double> energy;
  std::vector<VecX> casimirs;   // one entry per time, casimir_names.size() values
  std::vector<Vec3> momentum;   // spatial momentum, only when the attitude is co-evolved
  std::vector<Mat3> attitude;   // idem

  std::size_t size() const noexcept { return times.size(); }
  bool has_momentum() const noexcept { return !momentum.empty(); }
};

/// Integrates `steps` steps; the result has steps + 1 samples starting at t = 0.
/// With `with_group` (so3 systems only) the attitude starts at `attitude0`
/// and the spatial momentum A Pi is recorded at every sample.
Trajectory integrate(const LiePoissonSystem& sys, const DualVector& state0, const IntegratorChoice& choice,
                     std::size_t steps, bool with_group = false,
                     const GroupElement& attitude0 = GroupElement::identity(Algebra::so3));

Trajectory integrate(const CanonicalSystem& sys, const VecX& q0, const VecX& p0, const IntegratorChoice& choice,
                     std::size_t steps);

struct DriftStat {
  std::string name;
  double max = 0.0;  // max_k |c_k - c_0|
  double rms = 0.0;  // sqrt(mean_k (c_k - c_0)^2)
};

struct DriftReport {
  DriftStat energy;
  std::vector<DriftStat> casimirs;
  std::vector<DriftStat> momentum;  // M1..M3 when recorded
};

/// Drift of every conserved quantity relative to the first sample.
DriftReport diagnostics(const Trajectory& traj);

}  // namespace geomech

#endif  // GEOMECH_DYNAMICS_HPP
