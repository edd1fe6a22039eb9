#include "geomech/sections.hpp"

#include <cmath>

#include "geomech/sampling.hpp"

namespace geomech {

BodySection constant_section(const DualVector& mu0) {
  return {mu0.algebra(), [mu0](const GroupElement&) { return mu0; }, "body-constant"};
}

BodySection section_from_momentum(const DualVector& mu) {
  return {mu.algebra(), [mu](const GroupElement& g) { return coadjoint_action(g.inverse(), mu); },
          "constant-momentum"};
}

BodySection scaled_inertia_family(const LiePoissonSystem& sys, const ScaledInertiaOptions& opt) {
  if (!std::isfinite(opt.k) || !std::isfinite(opt.epsilon) || std::abs(opt.epsilon) >= 1.0) {
    throw InvalidParameter("scaled-inertia family needs finite k and |epsilon| < 1");
  }
  if (!opt.modulation.allFinite() || opt.modulation.norm() < 1e-12) {
    throw InvalidParameter("modulation direction must be a nonzero vector");
  }
  const Vec3 n = opt.modulation.normalized();
  const double k = opt.k;
  const double eps = opt.epsilon;

  if (const auto* top = sys.heavy_top()) {
    const Vec3 a = top->chi;
    const Vec3 Ia = top->inertia.cwiseProduct(a);
    if (Ia.cross(a).norm() > 1e-12 * top->inertia.norm()) {
      throw InvalidParameter("scaled-inertia family for the heavy top needs chi along a principal axis");
    }
    return {Algebra::se3,
            [k, eps, n, a, Ia](const GroupElement& g) {
              const double s = 1.0 + eps * (g.rotation() * a).dot(n);
              return DualVector::se3(k * s * Ia, a);
            },
            "scaled-inertia-family"};
  }
  if (const auto* rb = sys.rigid_body()) {
    if (opt.axis < 0 || opt.axis > 2) throw InvalidParameter("principal axis index must be 0, 1 or 2");
    const Vec3 a = Vec3::Unit(opt.axis);
    const Vec3 Ia = rb->inertia.cwiseProduct(a);
    return {Algebra::so3,
            [k, eps, n, a, Ia](const GroupElement& g) {
              const double s = 1.0 + eps * (g.rotation() * a).dot(n);
              return DualVector::so3(k * s * Ia);
            },
            "scaled-inertia-family"};
  }
  throw InvalidParameter("scaled-inertia family needs a rigid body or heavy top system");
}

BodySection perturbed_section(const BodySection& base, double amplitude, std::uint64_t seed) {
  if (!std::isfinite(amplitude)) throw InvalidParameter("perturbation amplitude must be finite");
  auto rng = sample_stream(seed, 0);
  const int dim = dimension(base.algebra);
  VecX w(dim);
  w.head<3>() = random_unit_vec3(rng);
  if (dim == 6) w.tail<3>() = random_unit_vec3(rng);
  w.normalize();
  const DualVector dir = DualVector::from_components(base.algebra, w);
  const Vec3 u = random_unit_vec3(rng);
  const Vec3 v = random_unit_vec3(rng);
  return {base.algebra,
          [base, amplitude, dir, u, v](const GroupElement& g) {
            const double theta = (g.rotation() * u).dot(v) + g.translation().dot(u);
            return base(g) + (amplitude * (1.5 + std::sin(3.0 * theta))) * dir;
          },
          "perturbed(" + base.label + ")"};
}

// ---------------------------------------------------------------------------

CanonicalSection harmonic_exact_section(int n, double energy) {
  if (n < 1) throw InvalidParameter("section dimension must be at least 1");
  if (!(energy > 0.0) || !std::isfinite(energy)) throw InvalidParameter("energy must be positive");
  const double two_e = 2.0 * energy / n;
  const double r = std::sqrt(two_e);
  const double bound = 0.99 * r;
  const auto W = [two_e, r](const VecX& q) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      const double x = q[i];
      sum += 0.5 * (x * std::sqrt(two_e - x * x) + two_e * std::asin(x / r));
    }
    return sum;
  };
  return CanonicalSection::from_potential(
      n, W, [bound](const VecX& q) { return q.cwiseAbs().maxCoeff() <= bound; }, 1e-3, "exact");
}

CanonicalSection free_particle_exact_section(int n, double energy) {
  if (n < 1) throw InvalidParameter("section dimension must be at least 1");
  if (!(energy >= 0.0) || !std::isfinite(energy)) throw InvalidParameter("energy must be nonnegative");
  const double p = std::sqrt(2.0 * energy / n);
  return CanonicalSection::from_potential(
      n, [p](const VecX& q) { return p * q.sum(); }, {}, 1e-3, "exact");
}

CanonicalSection scaled_section(const CanonicalSection& base, double factor) {
  if (!std::isfinite(factor)) throw InvalidParameter("scale factor must be finite");
  CanonicalSection s = base;
  s.eval = [base, factor](const VecX& q) { return VecX(factor * base(q)); };
  s.label = "perturbed(" + base.label + ")";
  return s;
}

}  // namespace geomech
