#include "geomech/hamilton_jacobi.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "geomech/sampling.hpp"

namespace geomech {

DualVector BodySection::operator()(const GroupElement& g) const {
  if (g.algebra() != algebra) throw TagMismatch("section '" + label + "' evaluated on the wrong group");
  if (!eval) throw InvalidParameter("section '" + label + "' has no evaluator");
  DualVector v = eval(g);
  if (v.algebra() != algebra) throw TagMismatch("section '" + label + "' returned a value on the wrong algebra");
  return v;
}

VecX CanonicalSection::operator()(const VecX& q) const {
  if (q.size() != dimension) throw InvalidParameter("section argument has wrong dimension");
  if (!contains(q)) throw DomainError("point outside the domain of section '" + label + "'");
  VecX p = eval(q);
  if (p.size() != dimension) throw InvalidParameter("section '" + label + "' returned the wrong dimension");
  if (!p.allFinite()) throw NonFiniteValue("section '" + label + "' is not finite");
  return p;
}

CanonicalSection CanonicalSection::from_potential(int n, std::function<double(const VecX&)> W,
                                                  std::function<bool(const VecX&)> domain, double h,
                                                  std::string label) {
  if (n < 1) throw InvalidParameter("section dimension must be at least 1");
  if (!W) throw InvalidParameter("potential is missing");
  if (!(h > 0.0)) throw InvalidParameter("stencil step must be positive");
  CanonicalSection s;
  s.dimension = n;
  s.domain = std::move(domain);
  s.label = std::move(label);
  s.eval = [W = std::move(W), n, h](const VecX& q) {
    VecX p(n);
    for (int i = 0; i < n; ++i) {
      VecX a = q, b = q, c = q, d = q;
      a[i] += 2.0 * h;
      b[i] += h;
      c[i] -= h;
      d[i] -= 2.0 * h;
      p[i] = (-W(a) + 8.0 * W(b) - 8.0 * W(c) + W(d)) / (12.0 * h);
    }
    return p;
  };
  return s;
}

// ---------------------------------------------------------------------------

Vec3 hj_residual_rigid(const Vec3& pi, const Vec3& gamma_bar, const Vec3& inertia) {
  RigidBodyParams{inertia}.validate();
  return pi.cross(gamma_bar.cwiseQuotient(inertia));
}

Vec3 hj_numerators_rigid(const Vec3& pi, const Vec3& gamma_bar, const Vec3& inertia) {
  RigidBodyParams{inertia}.validate();
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    out[i] = inertia[j] * pi[j] * gamma_bar[k] - inertia[k] * pi[k] * gamma_bar[j];
  }
  return out;
}

TopResidual hj_residual_top(const Vec3& pi, const Vec3& gamma, const Vec3& gamma_bar, const HeavyTopParams& p) {
  p.validate();
  const Vec3 omega = gamma_bar.cwiseQuotient(p.inertia);
  return {pi.cross(omega) + p.mgh() * gamma.cross(p.chi), gamma.cross(omega)};
}

TopResidual hj_numerators_top(const Vec3& pi, const Vec3& gamma, const Vec3& gamma_bar, const HeavyTopParams& p) {
  p.validate();
  const Vec3& I = p.inertia;
  const Vec3 torque = gamma.cross(p.chi);
  TopResidual out{hj_numerators_rigid(pi, gamma_bar, I), hj_numerators_rigid(gamma, gamma_bar, I)};
  for (int i = 0; i < 3; ++i) out.pi[i] += p.mgh() * I[(i + 1) % 3] * I[(i + 2) % 3] * torque[i];
  return out;
}

DualVector hj_residual_bracket(const LiePoissonSystem& sys, const DualVector& state, const DualVector& gamma_bar) {
  if (state.algebra() != sys.algebra || gamma_bar.algebra() != sys.algebra) {
    throw TagMismatch("state and section value must match the system algebra");
  }
  return hamiltonian_vector_field(functional_derivative(sys.hamiltonian, gamma_bar), state, sys.sign);
}

// ---------------------------------------------------------------------------

namespace {

void check_canonical(const CanonicalSystem& sys, const CanonicalSection& gamma, const VecX& q, double h) {
  if (sys.dimension != gamma.dimension || q.size() != sys.dimension) {
    throw InvalidParameter("system, section and point dimensions differ");
  }
  if (!(h > 0.0)) throw InvalidParameter("finite-difference step must be positive");
}

MatX section_jacobian(const CanonicalSection& gamma, const VecX& q, double h) {
  const int n = gamma.dimension;
  MatX J(n, n);
  for (int j = 0; j < n; ++j) {
    VecX qp = q, qm = q;
    qp[j] += h;
    qm[j] -= h;
    J.col(j) = (gamma(qp) - gamma(qm)) / (2.0 * h);
  }
  return J;
}

}  // namespace

VecX hj_residual_canonical(const CanonicalSystem& sys, const CanonicalSection& gamma, const VecX& q, double h) {
  check_canonical(sys, gamma, q, h);
  const auto composed = [&](const VecX& x) { return sys.energy(x, gamma(x)); };
  VecX out(sys.dimension);
  for (int i = 0; i < sys.dimension; ++i) {
    VecX qp = q, qm = q;
    qp[i] += h;
    qm[i] -= h;
    out[i] = (composed(qp) - composed(qm)) / (2.0 * h);
  }
  return out;
}

double relatedness_residual_canonical(const CanonicalSystem& sys, const CanonicalSection& gamma, const VecX& q,
                                      double h) {
  check_canonical(sys, gamma, q, h);
  const auto [dq, dp] = sys.gradient(q, gamma(q));
  return (section_jacobian(gamma, q, h) * dp + dq).cwiseAbs().maxCoeff();
}

double curl_defect(const CanonicalSection& gamma, const VecX& q, double h) {
  if (q.size() != gamma.dimension) throw InvalidParameter("section argument has wrong dimension");
  const MatX J = section_jacobian(gamma, q, h);
  return (J - J.transpose()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

DualVector section_derivative(const BodySection& gamma, const GroupElement& g, const AlgebraVector& xi, double step) {
  if (xi.algebra() != gamma.algebra) throw TagMismatch("probe direction does not match the section algebra");
  if (!(step > 0.0)) throw InvalidParameter("finite-difference step must be positive");
  const DualVector plus = gamma(g * exp_group(step * xi));
  const DualVector minus = gamma(g * exp_group(-step * xi));
  return (1.0 / (2.0 * step)) * (plus - minus);
}

Relatedness relatedness(const LiePoissonSystem& sys, const BodySection& gamma, const GroupElement& g, double step) {
  if (gamma.algebra != sys.algebra) throw TagMismatch("section does not match the system algebra");
  const DualVector value = gamma(g);
  const AlgebraVector xi = functional_derivative(sys.hamiltonian, value);
  const DualVector pushed = section_derivative(gamma, g, xi, step);
  const DualVector field = hamiltonian_vector_field(xi, value, sys.sign);
  return {xi, pushed, field, (pushed - field).max_abs()};
}

double relatedness_residual(const LiePoissonSystem& sys, const BodySection& gamma, const GroupElement& g,
                            double step) {
  return relatedness(sys, gamma, g, step).residual;
}

double closedness_defect(const BodySection& gamma, const GroupElement& g, const AlgebraVector& xi,
                         const AlgebraVector& eta, double step) {
  if (xi.algebra() != gamma.algebra || eta.algebra() != gamma.algebra) {
    throw TagMismatch("frame vectors do not match the section algebra");
  }
  const double d_xi_eta = pairing(section_derivative(gamma, g, xi, step), eta);
  const double d_eta_xi = pairing(section_derivative(gamma, g, eta, step), xi);
  return d_xi_eta - d_eta_xi - pairing(gamma(g), ad(xi, eta));
}

double closedness_frame_max(const BodySection& gamma, const GroupElement& g, double step) {
  const int n = dimension(gamma.algebra);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = closedness_defect(gamma, g, AlgebraVector::basis(gamma.algebra, i),
                                         AlgebraVector::basis(gamma.algebra, j), step);
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

MatX isotropy_basis(const DualVector& mu) {
  const Algebra a = mu.algebra();
  const int n = dimension(a);
  MatX M(n, n);
  for (int k = 0; k < n; ++k) M.col(k) = coad(AlgebraVector::basis(a, k), mu).components();
  Eigen::JacobiSVD<MatX> svd(M, Eigen::ComputeFullV);
  const double cutoff = 1e-10 * std::max(1.0, mu.norm());
  const VecX& sv = svd.singularValues();
  int rank = 0;
  while (rank < n && sv[rank] > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

MomentumLevel momentum_level_check(const BodySection& gamma, const DualVector& mu, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples < 1) throw InvalidParameter("momentum_level_check needs at least one sample");
  if (mu.algebra() != gamma.algebra) throw TagMismatch("momentum value does not match the section algebra");
  const MatX iso = isotropy_basis(mu);
  MomentumLevel out;
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = sample_stream(seed, i);
    const GroupElement g = random_group_element(gamma.algebra, rng);
    const DualVector value = gamma(g);
    out.momentum_defect = std::max(out.momentum_defect, (momentum_map(g, value) - mu).max_abs());
    if (iso.cols() > 0) {
      VecX c(iso.cols());
      for (Eigen::Index k = 0; k < c.size(); ++k) c[k] = uniform(rng, -1.0, 1.0);
      const GroupElement s = exp_group(AlgebraVector::from_components(gamma.algebra, iso * c));
      out.invariance_defect = std::max(out.invariance_defect, (gamma(s * g) - value).max_abs());
    }
  }
  return out;
}

}  // namespace geomech
