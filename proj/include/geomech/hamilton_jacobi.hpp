#ifndef GEOMECH_HAMILTON_JACOBI_HPP
#define GEOMECH_HAMILTON_JACOBI_HPP

// One-form sections and the residuals that test them.
//
// A section on a group is held in left trivialization, g -> gamma_body(g) in g*.
// Derivatives of sections are central differences along g exp(t xi).

#include <cstdint>
#include <functional>
#include <string>

#include "geomech/systems.hpp"

namespace geomech {

inline constexpr double kGroupProbeStep = 1e-5;

struct BodySection {
  Algebra algebra = Algebra::so3;
  std::function<DualVector(const GroupElement&)> eval;
  std::string label;

  /// Evaluates and checks the algebra tags of both argument and result.
  DualVector operator()(const GroupElement& g) const;
};

/// q -> p = gamma(q) on R^n, with an optional domain predicate.
struct CanonicalSection {
  int dimension = 1;
  std::function<VecX(const VecX&)> eval;
  std::function<bool(const VecX&)> domain;
  std::string label;

  /// Throws DomainError outside the domain, NonFiniteValue on non-finite output.
  VecX operator()(const VecX& q) const;
  bool contains(const VecX& q) const { return !domain || domain(q); }

  /// gamma = dW by a five-point central stencil of step h.  W is evaluated
  /// up to 2h away from q, so it must extend slightly beyond `domain`.
  static CanonicalSection from_potential(int n, std::function<double(const VecX&)> W,
                                         std::function<bool(const VecX&)> domain = {}, double h = 1e-3,
                                         std::string label = "exact");
};

// ---------------------------------------------------------------------------
// Reduced Hamilton-Jacobi residuals

/// Pi x (gbar_1/I_1, gbar_2/I_2, gbar_3/I_3).
Vec3 hj_residual_rigid(const Vec3& pi, const Vec3& gamma_bar, const Vec3& inertia);
/// Componentwise numerators (I_2 Pi_2 gbar_3 - I_3 Pi_3 gbar_2, ...); the
/// residual component i equals numerator i / (I_j I_k).
Vec3 hj_numerators_rigid(const Vec3& pi, const Vec3& gamma_bar, const Vec3& inertia);

struct TopResidual {
  Vec3 pi;     // Pi x (gbar/I) + mgh Gamma x chi
  Vec3 gamma;  // Gamma x (gbar/I)
};

TopResidual hj_residual_top(const Vec3& pi, const Vec3& gamma, const Vec3& gamma_bar, const HeavyTopParams& p);
/// Numerators of both slots, e.g. I_2 Pi_2 gbar_3 - I_3 Pi_3 gbar_2 + mgh I_2 I_3 (Gamma_2 chi_3 - Gamma_3 chi_2).
TopResidual hj_numerators_top(const Vec3& pi, const Vec3& gamma, const Vec3& gamma_bar, const HeavyTopParams& p);

/// Generic form {nu, h o gbar}_s evaluated at `state`, with the gradient of
/// h o gbar taken as dh/dmu at gbar (gbar held fixed):
///   -s ad*_{dh(gbar)} state.
/// Reproduces the rigid and heavy-top residuals for those systems.
DualVector hj_residual_bracket(const LiePoissonSystem& sys, const DualVector& state, const DualVector& gamma_bar);

// ---------------------------------------------------------------------------
// Canonical backend on T*R^n

/// d(H o gamma)(q) by central differences of step h.
VecX hj_residual_canonical(const CanonicalSystem& sys, const CanonicalSection& gamma, const VecX& q,
                           double h = 1e-5);
/// || Dgamma(q) dH/dp + dH/dq ||_inf at (q, gamma(q)): zero iff the canonical
/// field along the section is the push-forward of its base projection.
double relatedness_residual_canonical(const CanonicalSystem& sys, const CanonicalSection& gamma, const VecX& q,
                                      double h = 1e-5);
/// max_{i<j} |d gamma_i/dq_j - d gamma_j/dq_i|.
double curl_defect(const CanonicalSection& gamma, const VecX& q, double h = 1e-5);

// ---------------------------------------------------------------------------
// Group sections

/// d/dt gamma_body(g exp(t xi)) at t = 0.
DualVector section_derivative(const BodySection& gamma, const GroupElement& g, const AlgebraVector& xi,
                              double step = kGroupProbeStep);

struct Relatedness {
  AlgebraVector velocity;  // xi = dH/dmu at gamma_body(g)
  DualVector pushed;       // d/dt gamma_body(g exp(t xi))
  DualVector field;        // X_h(gamma_body(g))
  double residual;         // ||pushed - field||_inf
};

Relatedness relatedness(const LiePoissonSystem& sys, const BodySection& gamma, const GroupElement& g,
                        double step = kGroupProbeStep);
double relatedness_residual(const LiePoissonSystem& sys, const BodySection& gamma, const GroupElement& g,
                            double step = kGroupProbeStep);

/// d gamma(xi_L, eta_L)(g) = D_xi <gamma, eta> - D_eta <gamma, xi> - <gamma, [xi, eta]>.
double closedness_defect(const BodySection& gamma, const GroupElement& g, const AlgebraVector& xi,
                         const AlgebraVector& eta, double step = kGroupProbeStep);
/// max |closedness_defect| over pairs of basis vectors.
double closedness_frame_max(const BodySection& gamma, const GroupElement& g, double step = kGroupProbeStep);

/// Orthonormal basis (columns) of the isotropy algebra {zeta : ad*_zeta mu = 0}.
MatX isotropy_basis(const DualVector& mu);

struct MomentumLevel {
  double momentum_defect = 0.0;    // max ||J(g, gamma_body(g)) - mu||_inf
  double invariance_defect = 0.0;  // max ||gamma_body(s g) - gamma_body(g)||_inf, s in G_mu
};

/// Samples g (and stabilizer elements s = exp(zeta), zeta in the isotropy
/// algebra) from the given seed.
MomentumLevel momentum_level_check(const BodySection& gamma, const DualVector& mu, std::size_t samples,
                                   std::uint64_t seed = 0);

}  // namespace geomech

#endif  // GEOMECH_HAMILTON_JACOBI_HPP
