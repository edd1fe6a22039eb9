#ifndef GEOMECH_POISSON_HPP
#define GEOMECH_POISSON_HPP

// Lie-Poisson structure on the dual of so(3) / se(3).
//
//   {f, g}_s(mu) = s <mu, [df/dmu, dg/dmu]>,          s = +1 or -1
//   X_h(nu)      = -s ad*_{dh/dnu} nu                  so that dk/dt = {k, h}_s
//
// Reduced dynamics of left-invariant systems use s = -1 (the default).

#include <algorithm>
#include <functional>
#include <vector>

#include "geomech/lie.hpp"

namespace geomech {

enum class BracketSign : std::int8_t { minus = -1, plus = 1 };

constexpr double sign_value(BracketSign s) noexcept { return s == BracketSign::plus ? 1.0 : -1.0; }

/// Central finite-difference step: h = max(absolute, relative * |mu|).
struct FiniteDifference {
  double absolute = 1e-6;
  double relative = 1e-6;

  double step_for(double scale) const { return std::max(absolute, relative * scale); }
};

/// A smooth function on g*.  `gradient` returns the functional derivative
/// df/dmu in g; when empty it is computed by central differences.  `hessian`
/// is optional and only used where second derivatives help (Newton solves,
/// gradients of bracket fields).
struct ScalarField {
  std::function<double(const DualVector&)> value;
  std::function<AlgebraVector(const DualVector&)> gradient;
  std::function<MatX(const DualVector&)> hessian;

  double operator()(const DualVector& mu) const { return value(mu); }
  bool has_gradient() const noexcept { return static_cast<bool>(gradient); }
  bool has_hessian() const noexcept { return static_cast<bool>(hessian); }
};

/// df/dmu, analytic when available, otherwise central differences.
/// Throws NonFiniteValue when the result is not finite.
AlgebraVector functional_derivative(const ScalarField& f, const DualVector& mu, const FiniteDifference& fd = {});

/// Central-difference gradient, ignoring any analytic gradient on f.
AlgebraVector numeric_gradient(const ScalarField& f, const DualVector& mu, const FiniteDifference& fd = {});

/// mu -> <mu, xi>
ScalarField linear_field(const AlgebraVector& xi);
/// mu -> c + <mu, b> + 1/2 mu^T Q mu  (Q symmetrized)
ScalarField quadratic_field(Algebra a, double c, const VecX& b, const MatX& Q);
/// Pointwise product; gradient by the product rule when both factors have one.
ScalarField product(const ScalarField& f, const ScalarField& g);
/// mu -> {f, g}_s(mu).  Its gradient is analytic when f and g both carry
/// gradients and hessians, numeric otherwise.
ScalarField bracket_field(const ScalarField& f, const ScalarField& g, BracketSign s = BracketSign::minus);
/// Same field with the analytic derivatives removed.
ScalarField without_derivatives(const ScalarField& f);

/// Generic Lie-Poisson bracket s <mu, [df/dmu, dg/dmu]>.
double lie_poisson_bracket(const ScalarField& f, const ScalarField& g, const DualVector& mu,
                           BracketSign s = BracketSign::minus, const FiniteDifference& fd = {});

/// Closed form on so*(3): s Pi . (grad f x grad g).
double rigid_body_bracket(const ScalarField& f, const ScalarField& g, const Vec3& pi,
                          BracketSign s = BracketSign::minus, const FiniteDifference& fd = {});

/// Closed form on se*(3):
///   s [ Pi . (dPi f x dPi g) + Gamma . (dPi f x dGamma g - dPi g x dGamma f) ].
double heavy_top_bracket(const ScalarField& f, const ScalarField& g, const Vec3& pi, const Vec3& gamma,
                         BracketSign s = BracketSign::minus, const FiniteDifference& fd = {});

/// X_h(nu) = -s ad*_{dh/dnu} nu.
DualVector hamiltonian_vector_field(const ScalarField& h, const DualVector& nu, BracketSign s = BracketSign::minus,
                                    const FiniteDifference& fd = {});

/// Same field with the gradient already evaluated.
DualVector hamiltonian_vector_field(const AlgebraVector& dh, const DualVector& nu, BracketSign s = BracketSign::minus);

/// Orbit symplectic form omega(nu)(ad*_xi nu, ad*_eta nu) = s <nu, [xi, eta]>.
double orbit_symplectic_form(const DualVector& nu, const AlgebraVector& xi, const AlgebraVector& eta,
                             BracketSign s = BracketSign::minus);

}  // namespace geomech

#endif  // GEOMECH_POISSON_HPP
