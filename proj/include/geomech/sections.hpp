#ifndef GEOMECH_SECTIONS_HPP
#define GEOMECH_SECTIONS_HPP

// Candidate sections for the Hamilton-Jacobi checks.

#include <cstdint>

#include "geomech/hamilton_jacobi.hpp"

namespace geomech {

/// gamma_body(g) = mu0 for every g.
BodySection constant_section(const DualVector& mu0);

/// gamma_body(g) = Ad*_g mu: the unique section with J(g, gamma_body(g)) = mu.
BodySection section_from_momentum(const DualVector& mu);

/// Solutions of the reduced Hamilton-Jacobi equation built from the scaled
/// inertia direction k I (s(g) a), with a a principal axis and
///   s(g) = 1 + epsilon (A a) . n,   n a fixed unit vector.
/// For the heavy top a = chi (which must be principal) and the Gamma part
/// is the constant unit vector a.  Both Hamilton-Jacobi and relatedness
/// residuals vanish identically.
struct ScaledInertiaOptions {
  double k = 1.0;
  int axis = 2;  // principal axis index for the rigid body
  double epsilon = 0.25;
  Vec3 modulation = Vec3(1.0, 2.0, 2.0) / 3.0;
};

BodySection scaled_inertia_family(const LiePoissonSystem& sys, const ScaledInertiaOptions& opt = {});

/// gamma_body(g) = base(g) + amplitude (1.5 + sin(3 theta(g))) w, where w is
/// a random unit direction and theta(g) = (A u) . v (+ a . u on SE(3)) with
/// u, v random unit vectors; all three are drawn from `seed`.  The added
/// term never vanishes.
BodySection perturbed_section(const BodySection& base, double amplitude, std::uint64_t seed);

// ---------------------------------------------------------------------------
// T*R^n sections

/// gamma = dW with W_E(q) = sum_i w(q_i), w'(x) = sqrt(2 e - x^2), e = E / n:
/// the level set H = E of the harmonic oscillator.  Domain |q_i| <= 0.99 sqrt(2e),
/// which keeps the stencil of dW inside the real domain of W.
CanonicalSection harmonic_exact_section(int n, double energy);
/// Constant momentum p_i = sqrt(2 E / n): a level-set section of the free particle.
CanonicalSection free_particle_exact_section(int n, double energy);
/// Multiplies the momenta of `base` by `factor`.
CanonicalSection scaled_section(const CanonicalSection& base, double factor);

}  // namespace geomech

#endif  // GEOMECH_SECTIONS_HPP
