#include "geomech/poisson.hpp"

#include <cmath>

namespace geomech {

AlgebraVector numeric_gradient(const ScalarField& f, const DualVector& mu, const FiniteDifference& fd) {
  const int n = mu.dim();
  const double h = fd.step_for(mu.norm());
  VecX g(n);
  for (int i = 0; i < n; ++i) {
    const DualVector e = h * DualVector::basis(mu.algebra(), i);
    g[i] = (f(mu + e) - f(mu - e)) / (2.0 * h);
  }
  if (!g.allFinite()) throw NonFiniteValue("finite-difference gradient is not finite");
  return AlgebraVector::from_components(mu.algebra(), g);
}

AlgebraVector functional_derivative(const ScalarField& f, const DualVector& mu, const FiniteDifference& fd) {
  if (!f.has_gradient()) return numeric_gradient(f, mu, fd);
  AlgebraVector g = f.gradient(mu);
  if (g.algebra() != mu.algebra()) throw TagMismatch("gradient lives on a different algebra");
  return g;
}

ScalarField linear_field(const AlgebraVector& xi) {
  ScalarField f;
  f.value = [xi](const DualVector& mu) { return pairing(mu, xi); };
  f.gradient = [xi](const DualVector&) { return xi; };
  f.hessian = [n = xi.dim()](const DualVector&) { return MatX::Zero(n, n); };
  return f;
}

ScalarField quadratic_field(Algebra a, double c, const VecX& b, const MatX& Q) {
  const int n = dimension(a);
  if (b.size() != n || Q.rows() != n || Q.cols() != n) throw InvalidParameter("quadratic_field: dimension mismatch");
  const MatX S = 0.5 * (Q + Q.transpose());
  ScalarField f;
  f.value = [a, c, b, S](const DualVector& mu) {
    if (mu.algebra() != a) throw TagMismatch("quadratic_field evaluated on the wrong algebra");
    const VecX x = mu.components();
    return c + b.dot(x) + 0.5 * x.dot(S * x);
  };
  f.gradient = [a, b, S](const DualVector& mu) {
    return AlgebraVector::from_components(a, b + S * mu.components());
  };
  f.hessian = [S](const DualVector&) { return S; };
  return f;
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
  ScalarField p;
  p.value = [f, g](const DualVector& mu) { return f(mu) * g(mu); };
  if (f.has_gradient() && g.has_gradient()) {
    p.gradient = [f, g](const DualVector& mu) { return g(mu) * f.gradient(mu) + f(mu) * g.gradient(mu); };
  }
  return p;
}

ScalarField without_derivatives(const ScalarField& f) {
  ScalarField out;
  out.value = f.value;
  return out;
}

ScalarField bracket_field(const ScalarField& f, const ScalarField& g, BracketSign s) {
  ScalarField b;
  b.value = [f, g, s](const DualVector& mu) { return lie_poisson_bracket(f, g, mu, s); };
  if (f.has_gradient() && g.has_gradient() && f.has_hessian() && g.has_hessian()) {
    // d/dmu s<mu, [df, dg]> = s ( [df, dg] - Hf ad*_{dg} mu + Hg ad*_{df} mu )
    b.gradient = [f, g, s](const DualVector& mu) {
      const AlgebraVector df = f.gradient(mu);
      const AlgebraVector dg = g.gradient(mu);
      const VecX grad = ad(df, dg).components() - f.hessian(mu) * coad(dg, mu).components() +
                        g.hessian(mu) * coad(df, mu).components();
      return AlgebraVector::from_components(mu.algebra(), sign_value(s) * grad);
    };
  }
  return b;
}

double lie_poisson_bracket(const ScalarField& f, const ScalarField& g, const DualVector& mu, BracketSign s,
                           const FiniteDifference& fd) {
  const AlgebraVector df = functional_derivative(f, mu, fd);
  const AlgebraVector dg = functional_derivative(g, mu, fd);
  return sign_value(s) * pairing(mu, ad(df, dg));
}

double rigid_body_bracket(const ScalarField& f, const ScalarField& g, const Vec3& pi, BracketSign s,
                          const FiniteDifference& fd) {
  const DualVector mu = DualVector::so3(pi);
  const Vec3 df = functional_derivative(f, mu, fd).angular();
  const Vec3 dg = functional_derivative(g, mu, fd).angular();
  return sign_value(s) * pi.dot(df.cross(dg));
}

double heavy_top_bracket(const ScalarField& f, const ScalarField& g, const Vec3& pi, const Vec3& gamma,
                         BracketSign s, const FiniteDifference& fd) {
  const DualVector mu = DualVector::se3(pi, gamma);
  const AlgebraVector df = functional_derivative(f, mu, fd);
  const AlgebraVector dg = functional_derivative(g, mu, fd);
  const Vec3 fp = df.angular(), fg = df.linear();
  const Vec3 gp = dg.angular(), gg = dg.linear();
  return sign_value(s) * (pi.dot(fp.cross(gp)) + gamma.dot(fp.cross(gg) - gp.cross(fg)));
}

DualVector hamiltonian_vector_field(const AlgebraVector& dh, const DualVector& nu, BracketSign s) {
  return -sign_value(s) * coad(dh, nu);
}

DualVector hamiltonian_vector_field(const ScalarField& h, const DualVector& nu, BracketSign s,
                                    const FiniteDifference& fd) {
  return hamiltonian_vector_field(functional_derivative(h, nu, fd), nu, s);
}

double orbit_symplectic_form(const DualVector& nu, const AlgebraVector& xi, const AlgebraVector& eta,
                             BracketSign s) {
  return sign_value(s) * pairing(nu, ad(xi, eta));
}

}  // namespace geomech
