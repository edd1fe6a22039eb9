#include "geomech/dynamics.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace geomech {

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::explicit_rk4: return "explicit-rk4";
    case Scheme::implicit_midpoint: return "implicit-midpoint";
    case Scheme::coadjoint_splitting: return "coadjoint-splitting";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "explicit-rk4" || name == "rk4") return Scheme::explicit_rk4;
  if (name == "implicit-midpoint" || name == "midpoint") return Scheme::implicit_midpoint;
  if (name == "coadjoint-splitting" || name == "splitting") return Scheme::coadjoint_splitting;
  throw InvalidParameter("unknown integrator '" + std::string(name) + "'");
}

void IntegratorChoice::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("dt must be positive");
  if (!(newton_tol > 0.0)) throw InvalidParameter("newton_tol must be positive");
  if (newton_max_iter < 1) throw InvalidParameter("newton_max_iter must be at least 1");
}

namespace {

VecX field(const LiePoissonSystem& sys, const VecX& x) {
  const DualVector nu = DualVector::from_components(sys.algebra, x);
  return hamiltonian_vector_field(sys.hamiltonian, nu, sys.sign).components();
}

// Jacobian of nu -> X_h(nu).  With X = -s C(nu) dh where C(nu) zeta = ad*_zeta nu:
//   DX = -s ( C(nu) H + ad(dh)^T ).
MatX field_jacobian(const LiePoissonSystem& sys, const VecX& x) {
  const int n = static_cast<int>(x.size());
  const DualVector nu = DualVector::from_components(sys.algebra, x);
  if (sys.hamiltonian.has_gradient() && sys.hamiltonian.has_hessian()) {
    MatX C(n, n);
    for (int k = 0; k < n; ++k) C.row(k) = -coad(AlgebraVector::basis(sys.algebra, k), nu).components().transpose();
    const AlgebraVector dh = sys.hamiltonian.gradient(nu);
    return -sign_value(sys.sign) * (C * sys.hamiltonian.hessian(nu) + ad_matrix(dh).transpose());
  }
  MatX J(n, n);
  const double h = 1e-6 * std::max(1.0, x.norm());
  for (int k = 0; k < n; ++k) {
    VecX xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    J.col(k) = (field(sys, xp) - field(sys, xm)) / (2.0 * h);
  }
  return J;
}

template <class Field, class Jacobian>
VecX solve_midpoint(const VecX& x0, double dt, const IntegratorChoice& choice, Field&& f, Jacobian&& jac) {
  const int n = static_cast<int>(x0.size());
  VecX x1 = x0 + dt * f(x0);
  double last = 0.0;
  for (int it = 0; it < choice.newton_max_iter; ++it) {
    const VecX mid = 0.5 * (x0 + x1);
    const VecX residual = x1 - x0 - dt * f(mid);
    const MatX J = MatX::Identity(n, n) - 0.5 * dt * jac(mid);
    const VecX delta = J.partialPivLu().solve(residual);
    x1 -= delta;
    last = delta.cwiseAbs().maxCoeff();
    if (!x1.allFinite()) throw ConvergenceError("implicit midpoint diverged", last);
    if (last <= choice.newton_tol * std::max(1.0, x1.cwiseAbs().maxCoeff())) return x1;
  }
  throw ConvergenceError("implicit midpoint Newton iteration did not converge", last);
}

// Cayley map (I - W/2)^-1 (I + W/2): the midpoint rule for A' = A W.
Mat3 cayley(const Mat3& W) {
  return (Mat3::Identity() - 0.5 * W).inverse() * (Mat3::Identity() + 0.5 * W);
}

DualVector splitting_step(const LiePoissonSystem& sys, const DualVector& nu, double dt, AlgebraVector* xi_used) {
  const double s = sign_value(sys.sign);
  const AlgebraVector xi0 = functional_derivative(sys.hamiltonian, nu);
  const DualVector predicted = coadjoint_action(exp_group((s * dt) * xi0), nu);
  const AlgebraVector xi_mid = functional_derivative(sys.hamiltonian, 0.5 * (nu + predicted));
  if (xi_used) *xi_used = xi_mid;
  return coadjoint_action(exp_group((s * dt) * xi_mid), nu);
}

}  // namespace

DualVector step(const LiePoissonSystem& sys, const DualVector& state, const IntegratorChoice& choice) {
  choice.validate();
  if (state.algebra() != sys.algebra) throw TagMismatch("state does not match the system algebra");
  const double dt = choice.dt;
  switch (choice.scheme) {
    case Scheme::explicit_rk4: {
      const VecX x = state.components();
      const VecX k1 = field(sys, x);
      const VecX k2 = field(sys, x + 0.5 * dt * k1);
      const VecX k3 = field(sys, x + 0.5 * dt * k2);
      const VecX k4 = field(sys, x + dt * k3);
      return DualVector::from_components(sys.algebra, x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }
    case Scheme::implicit_midpoint: {
      const VecX x1 = solve_midpoint(
          state.components(), dt, choice, [&](const VecX& x) { return field(sys, x); },
          [&](const VecX& x) { return field_jacobian(sys, x); });
      return DualVector::from_components(sys.algebra, x1);
    }
    case Scheme::coadjoint_splitting:
      return splitting_step(sys, state, dt, nullptr);
  }
  throw InvalidParameter("unknown scheme");
}

BodyState step(const LiePoissonSystem& sys, const BodyState& state, const IntegratorChoice& choice) {
  if (sys.algebra != Algebra::so3) throw TagMismatch("attitude co-evolution requires an so3 system");
  if (state.attitude.algebra() != Algebra::so3) throw TagMismatch("attitude must be an SO(3) element");
  choice.validate();
  const double dt = choice.dt;
  const double s = sign_value(sys.sign);
  const auto omega = [&](const Vec3& pi) {
    return functional_derivative(sys.hamiltonian, DualVector::so3(pi)).angular();
  };

  switch (choice.scheme) {
    case Scheme::explicit_rk4: {
      // Classical RK4 on the 12-dimensional ambient system.
      struct Pair {
        Mat3 A;
        Vec3 pi;
      };
      const auto rhs = [&](const Pair& y) {
        return Pair{-s * y.A * hat(omega(y.pi)), field(sys, y.pi)};
      };
      const auto axpy = [](const Pair& y, double h, const Pair& k) { return Pair{y.A + h * k.A, y.pi + h * k.pi}; };
      const Pair y{state.attitude.rotation(), state.momentum.pi()};
      const Pair k1 = rhs(y);
      const Pair k2 = rhs(axpy(y, 0.5 * dt, k1));
      const Pair k3 = rhs(axpy(y, 0.5 * dt, k2));
      const Pair k4 = rhs(axpy(y, dt, k3));
      const Mat3 A = y.A + dt / 6.0 * (k1.A + 2.0 * k2.A + 2.0 * k3.A + k4.A);
      const Vec3 pi = y.pi + dt / 6.0 * (k1.pi + 2.0 * k2.pi + 2.0 * k3.pi + k4.pi);
      return {GroupElement::so3(A), DualVector::so3(pi)};
    }
    case Scheme::implicit_midpoint: {
      const DualVector next = step(sys, state.momentum, choice);
      const Vec3 w_mid = omega(0.5 * (state.momentum.pi() + next.pi()));
      return {state.attitude * GroupElement::so3(cayley(-s * dt * hat(w_mid))), next};
    }
    case Scheme::coadjoint_splitting: {
      AlgebraVector xi = AlgebraVector::zero(Algebra::so3);
      const DualVector next = splitting_step(sys, state.momentum, dt, &xi);
      return {state.attitude * exp_group((-s * dt) * xi), next};
    }
  }
  throw InvalidParameter("unknown scheme");
}

std::pair<VecX, VecX> step(const CanonicalSystem& sys, const VecX& q, const VecX& p, const IntegratorChoice& choice) {
  choice.validate();
  const int n = sys.dimension;
  if (q.size() != n || p.size() != n) throw InvalidParameter("canonical state has wrong dimension");
  const auto f = [&](const VecX& z) { return sys.vector_field(z.head(n), z.tail(n)); };
  VecX z(2 * n);
  z << q, p;
  const double dt = choice.dt;
  switch (choice.scheme) {
    case Scheme::explicit_rk4: {
      const VecX k1 = f(z);
      const VecX k2 = f(z + 0.5 * dt * k1);
      const VecX k3 = f(z + 0.5 * dt * k2);
      const VecX k4 = f(z + dt * k3);
      z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      break;
    }
    case Scheme::implicit_midpoint: {
      const auto jac = [&](const VecX& x) {
        MatX J(2 * n, 2 * n);
        const double h = 1e-6 * std::max(1.0, x.norm());
        for (int k = 0; k < 2 * n; ++k) {
          VecX xp = x, xm = x;
          xp[k] += h;
          xm[k] -= h;
          J.col(k) = (f(xp) - f(xm)) / (2.0 * h);
        }
        return J;
      };
      z = solve_midpoint(z, dt, choice, f, jac);
      break;
    }
    case Scheme::coadjoint_splitting:
      throw InvalidParameter("coadjoint-splitting applies to Lie-Poisson systems only");
  }
  return {z.head(n), z.tail(n)};
}

// ---------------------------------------------------------------------------

namespace {

void record(Trajectory& traj, const LiePoissonSystem& sys, double t, const DualVector& nu) {
  traj.times.push_back(t);
  traj.states.push_back(nu.components());
  traj.energy.push_back(sys.hamiltonian(nu));
  VecX c(static_cast<Eigen::Index>(sys.casimirs.size()));
  for (std::size_t i = 0; i < sys.casimirs.size(); ++i) c[static_cast<Eigen::Index>(i)] = sys.casimirs[i].field(nu);
  traj.casimirs.push_back(c);
}

}  // namespace

Trajectory integrate(const LiePoissonSystem& sys, const DualVector& state0, const IntegratorChoice& choice,
                     std::size_t steps, bool with_group, const GroupElement& attitude0) {
  choice.validate();
  if (state0.algebra() != sys.algebra) throw TagMismatch("initial state does not match the system algebra");
  if (with_group && sys.algebra != Algebra::so3) throw TagMismatch("attitude co-evolution requires an so3 system");

  Trajectory traj;
  traj.system = sys.label;
  traj.state_labels = {"Pi1", "Pi2", "Pi3"};
  if (sys.algebra == Algebra::se3) traj.state_labels.insert(traj.state_labels.end(), {"G1", "G2", "G3"});
  for (const auto& c : sys.casimirs) traj.casimir_names.push_back(c.name);
  traj.times.reserve(steps + 1);

  if (!with_group) {
    DualVector nu = state0;
    record(traj, sys, 0.0, nu);
    for (std::size_t k = 1; k <= steps; ++k) {
      nu = step(sys, nu, choice);
      record(traj, sys, static_cast<double>(k) * choice.dt, nu);
    }
    return traj;
  }

  BodyState body{attitude0, state0};
  const auto record_body = [&](double t) {
    record(traj, sys, t, body.momentum);
    traj.attitude.push_back(body.attitude.rotation());
    traj.momentum.push_back(momentum_map(body.attitude, body.momentum).pi());
  };
  record_body(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    body = step(sys, body, choice);
    record_body(static_cast<double>(k) * choice.dt);
  }
  return traj;
}

Trajectory integrate(const CanonicalSystem& sys, const VecX& q0, const VecX& p0, const IntegratorChoice& choice,
                     std::size_t steps) {
  choice.validate();
  Trajectory traj;
  traj.system = sys.label;
  for (int i = 0; i < sys.dimension; ++i) traj.state_labels.push_back("q" + std::to_string(i + 1));
  for (int i = 0; i < sys.dimension; ++i) traj.state_labels.push_back("p" + std::to_string(i + 1));
  VecX q = q0, p = p0;
  const auto rec = [&](double t) {
    VecX z(2 * sys.dimension);
    z << q, p;
    traj.times.push_back(t);
    traj.states.push_back(z);
    traj.energy.push_back(sys.energy(q, p));
    traj.casimirs.emplace_back(0);
  };
  rec(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    std::tie(q, p) = step(sys, q, p, choice);
    rec(static_cast<double>(k) * choice.dt);
  }
  return traj;
}

namespace {

template <class Get>
DriftStat drift(std::string name, std::size_t n, Get&& get) {
  DriftStat d{std::move(name), 0.0, 0.0};
  const double ref = get(0);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = std::abs(get(k) - ref);
    d.max = std::max(d.max, e);
    sum += e * e;
  }
  d.rms = std::sqrt(sum / static_cast<double>(n));
  return d;
}

}  // namespace

DriftReport diagnostics(const Trajectory& traj) {
  DriftReport r;
  const std::size_t n = traj.size();
  if (n == 0) throw InvalidParameter("diagnostics of an empty trajectory");
  r.energy = drift("energy", n, [&](std::size_t k) { return traj.energy[k]; });
  for (std::size_t i = 0; i < traj.casimir_names.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    r.casimirs.push_back(drift(traj.casimir_names[i], n, [&](std::size_t k) { return traj.casimirs[k][idx]; }));
  }
  if (traj.has_momentum()) {
    for (int i = 0; i < 3; ++i) {
      r.momentum.push_back(
          drift("M" + std::to_string(i + 1), n, [&](std::size_t k) { return traj.momentum[k][i]; }));
    }
  }
  return r;
}

}  // namespace geomech
