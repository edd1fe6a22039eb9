#include <gtest/gtest.h>

#include <cmath>

#include "geomech/sampling.hpp"
#include "geomech/systems.hpp"

using namespace geomech;

TEST(RigidBody, HamiltonianAndGradient) {
  const LiePoissonSystem sys = rigid_body_system({Vec3(1, 2, 3)});
  const DualVector pi = DualVector::so3(Vec3(1, 2, 3));
  EXPECT_DOUBLE_EQ(sys.hamiltonian(pi), 3.0);
  EXPECT_DOUBLE_EQ(sys.hamiltonian(DualVector::zero(Algebra::so3)), 0.0);
  EXPECT_EQ(sys.hamiltonian.gradient(pi).components(), VecX(Vec3(1, 1, 1)));
  ASSERT_EQ(sys.casimirs.size(), 1u);
  EXPECT_DOUBLE_EQ(sys.casimirs[0].field(pi), 7.0);
  ASSERT_NE(sys.rigid_body(), nullptr);
  EXPECT_EQ(sys.heavy_top(), nullptr);
}

TEST(RigidBody, RejectsNonpositiveInertia) {
  EXPECT_THROW(rigid_body_system({Vec3(1, 0, 3)}), InvalidParameter);
  EXPECT_THROW(rigid_body_system({Vec3(1, -2, 3)}), InvalidParameter);
  EXPECT_THROW(rigid_body_system({Vec3(1, NAN, 3)}), InvalidParameter);
}

TEST(HeavyTop, HamiltonianAndGradient) {
  const LiePoissonSystem sys = heavy_top_system(HeavyTopParams::with_mgh(Vec3(1, 1, 1), 1.0, Vec3::UnitZ()));
  EXPECT_DOUBLE_EQ(sys.hamiltonian(DualVector::se3(Vec3::Zero(), Vec3(0, 0, 1))), 1.0);
  EXPECT_DOUBLE_EQ(sys.hamiltonian(DualVector::se3(Vec3::Zero(), Vec3(1, 0, 0))), 0.0);
  auto rng = sample_stream(51, 0);
  for (int i = 0; i < 10; ++i) {
    const DualVector nu = DualVector::se3(uniform_vec3(rng, -1, 1), uniform_vec3(rng, -1, 1));
    EXPECT_EQ(sys.hamiltonian.gradient(nu).linear(), Vec3(0, 0, 1));
    EXPECT_LE((sys.hamiltonian.gradient(nu) - numeric_gradient(sys.hamiltonian, nu)).max_abs(), 1e-8);
  }
  ASSERT_EQ(sys.casimirs.size(), 2u);
  EXPECT_EQ(sys.casimirs[0].name, "Pi.Gamma");
}

TEST(HeavyTop, ParameterValidation) {
  HeavyTopParams p;
  p.mass = 2.0;
  p.gravity = 9.81;
  p.length = 0.5;
  EXPECT_DOUBLE_EQ(p.mgh(), 2.0 * 9.81 * 0.5);
  EXPECT_NO_THROW(p.validate());
  p.chi = Vec3(0, 0, 1.0 + 1e-9);
  EXPECT_THROW(p.validate(), InvalidParameter);
  p.chi = Vec3::UnitZ();
  p.mass = -1.0;
  EXPECT_THROW(p.validate(), InvalidParameter);
  // mgh = 0 is a free rigid body embedded in se*(3).
  EXPECT_NO_THROW(heavy_top_system(HeavyTopParams::with_mgh(Vec3(1, 2, 3), 0.0, Vec3::UnitZ())));
}

TEST(Casimirs, AnnihilateRandomFields) {
  auto rng = sample_stream(52, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 inertia = uniform_vec3(rng, 0.5, 3.0);
    for (const LiePoissonSystem& sys :
         {rigid_body_system({inertia}),
          heavy_top_system(HeavyTopParams::with_mgh(inertia, uniform(rng, 0, 2), random_unit_vec3(rng)))}) {
      const int n = dimension(sys.algebra);
      for (int k = 0; k < 20; ++k) {
        MatX Q = MatX::Random(n, n);
        const ScalarField f = quadratic_field(sys.algebra, 0.3, VecX::Random(n), Q);
        VecX x(n);
        for (int i = 0; i < n; ++i) x[i] = uniform(rng, -2, 2);
        const DualVector mu = DualVector::from_components(sys.algebra, x);
        for (const auto& c : sys.casimirs) {
          EXPECT_LE(std::abs(lie_poisson_bracket(c.field, f, mu)), 1e-8) << c.name;
          EXPECT_LE(std::abs(lie_poisson_bracket(without_derivatives(c.field), f, mu)), 1e-8) << c.name;
        }
      }
    }
  }
}

TEST(Legendre, Examples) {
  const LegendreResult r = legendre(Vec3(1, 2, 3), AlgebraVector::so3(Vec3(1, 1, 1)));
  EXPECT_EQ(r.momentum.pi(), Vec3(1, 2, 3));
  EXPECT_DOUBLE_EQ(r.energy, 3.0);
  const LegendreResult z = legendre(Vec3(1, 2, 3), AlgebraVector::zero(Algebra::so3));
  EXPECT_EQ(z.momentum.max_abs(), 0.0);
  EXPECT_EQ(z.energy, 0.0);
  EXPECT_THROW(legendre(Vec3(0, 2, 3), AlgebraVector::zero(Algebra::so3)), InvalidParameter);
  EXPECT_THROW(legendre(Vec3(1, 2, 3), AlgebraVector::zero(Algebra::se3)), TagMismatch);
  Mat3 bad = Mat3::Identity();
  bad(0, 1) = 2.0;
  bad(1, 0) = 2.0;
  EXPECT_THROW(legendre(bad, AlgebraVector::zero(Algebra::so3)), InvalidParameter);
}

TEST(Legendre, ConsistentWithHamiltonian) {
  auto rng = sample_stream(53, 0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 inertia = uniform_vec3(rng, 0.2, 5.0);
    const LegendreResult r = legendre(inertia, AlgebraVector::so3(uniform_vec3(rng, -3, 3)));
    EXPECT_NEAR(r.energy, rigid_body_system({inertia}).hamiltonian(r.momentum), 1e-12);
  }
}

TEST(Legendre, FullInertiaTensorMatchesRotatedDiagonal) {
  auto rng = sample_stream(54, 0);
  const Mat3 R = random_rotation(rng);
  const Vec3 d(1, 2, 3);
  const Mat3 I = R * d.asDiagonal() * R.transpose();
  const Vec3 w = uniform_vec3(rng, -1, 1);
  const LegendreResult full = legendre(I, AlgebraVector::so3(w));
  const LegendreResult diag = legendre(d, AlgebraVector::so3(R.transpose() * w));
  EXPECT_NEAR(full.energy, diag.energy, 1e-12);
  EXPECT_LE((R.transpose() * full.momentum.pi() - diag.momentum.pi()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MomentumMap, Examples) {
  EXPECT_EQ(momentum_map(GroupElement::identity(Algebra::so3), DualVector::so3(Vec3(1, 2, 3))).pi(), Vec3(1, 2, 3));
  Mat3 Rz;
  Rz << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const Vec3 m = momentum_map(GroupElement::so3(Rz), DualVector::so3(Vec3(1, 0, 0))).pi();
  EXPECT_LE((m - Vec3(0, 1, 0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MomentumMap, EquivarianceAndNorm) {
  auto rng = sample_stream(55, 0);
  for (Algebra a : {Algebra::so3, Algebra::se3}) {
    for (int i = 0; i < 50; ++i) {
      const GroupElement A = random_group_element(a, rng), B = random_group_element(a, rng);
      VecX x(dimension(a));
      for (int k = 0; k < x.size(); ++k) x[k] = uniform(rng, -2, 2);
      const DualVector pi = DualVector::from_components(a, x);
      EXPECT_LE((momentum_map(B * A, pi) - coadjoint_action(B, momentum_map(A, pi))).max_abs(), 1e-12);
      if (a == Algebra::so3) {
        EXPECT_NEAR(momentum_map(A, pi).norm(), pi.norm(), 1e-12);
        EXPECT_LE((momentum_map(A, pi).pi() - A.rotation() * pi.pi()).cwiseAbs().maxCoeff(), 1e-14);
      }
    }
  }
}

TEST(Canonical, VectorFields) {
  const CanonicalSystem ho = harmonic_oscillator(1);
  VecX q(1), p(1);
  q << 1.0;
  p << 0.0;
  EXPECT_EQ(ho.vector_field(q, p), (VecX(2) << 0.0, -1.0).finished());

  const CanonicalSystem fp = free_particle(2);
  VecX q2(2), p2(2);
  q2 << 0.3, -4.0;
  p2 << 1.5, -2.0;
  EXPECT_EQ(fp.vector_field(q2, p2), (VecX(4) << 1.5, -2.0, 0.0, 0.0).finished());

  const CanonicalSystem constant = canonical_system(3, [](const VecX&, const VecX&) { return 4.2; });
  EXPECT_LE(constant.vector_field(VecX::Ones(3), VecX::Ones(3)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Canonical, NumericGradientMatchesAnalytic) {
  const CanonicalSystem analytic = harmonic_oscillator(3);
  const CanonicalSystem numeric = canonical_system(3, analytic.hamiltonian);
  auto rng = sample_stream(56, 0);
  for (int i = 0; i < 20; ++i) {
    const VecX q = uniform_vec3(rng, -2, 2), p = uniform_vec3(rng, -2, 2);
    EXPECT_LE((analytic.vector_field(q, p) - numeric.vector_field(q, p)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Canonical, Errors) {
  EXPECT_THROW(canonical_system(0, [](const VecX&, const VecX&) { return 0.0; }), InvalidParameter);
  const CanonicalSystem bad = canonical_system(1, [](const VecX& q, const VecX&) { return std::log(q[0]); });
  EXPECT_THROW(bad.energy(VecX::Constant(1, -1.0), VecX::Zero(1)), NonFiniteValue);
  EXPECT_THROW(harmonic_oscillator(2).energy(VecX::Zero(3), VecX::Zero(2)), InvalidParameter);
}
