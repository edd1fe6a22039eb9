#include "geomech/verify.hpp"

#include <algorithm>
#include <cmath>

#include "geomech/sampling.hpp"

namespace geomech {

std::string_view to_string(HjMode m) noexcept {
  return m == HjMode::fixed_state ? "fixed-state" : "section-state";
}

HjMode parse_hj_mode(std::string_view name) {
  if (name == "fixed-state") return HjMode::fixed_state;
  if (name == "section-state") return HjMode::section_state;
  throw InvalidParameter("unknown HJ evaluation mode '" + std::string(name) + "'");
}

std::string_view to_string(Verdict v) noexcept { return v == Verdict::consistent ? "CONSISTENT" : "INCONSISTENT"; }

void VerifyOptions::validate() const {
  if (samples < 1) throw InvalidParameter("samples must be at least 1");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidParameter("tol must be positive");
  if (!(step > 0.0)) throw InvalidParameter("finite-difference step must be positive");
  if (mode == HjMode::fixed_state && !state) throw InvalidParameter("fixed-state mode needs a state");
}

namespace {

VecX stack(const Vec3& a, const Vec3& b) {
  VecX v(6);
  v << a, b;
  return v;
}

// HJ residual vector and, for the shipped models, its numerators.
std::pair<VecX, VecX> hj_terms(const LiePoissonSystem& sys, const DualVector& state, const DualVector& value) {
  if (const auto* rb = sys.rigid_body()) {
    return {hj_residual_rigid(state.pi(), value.pi(), rb->inertia),
            hj_numerators_rigid(state.pi(), value.pi(), rb->inertia)};
  }
  if (const auto* top = sys.heavy_top()) {
    const TopResidual r = hj_residual_top(state.pi(), state.gamma(), value.pi(), *top);
    const TopResidual num = hj_numerators_top(state.pi(), state.gamma(), value.pi(), *top);
    return {stack(r.pi, r.gamma), stack(num.pi, num.gamma)};
  }
  return {hj_residual_bracket(sys, state, value).components(), VecX()};
}

}  // namespace

ResidualReport verify_equivalence(const LiePoissonSystem& sys, const BodySection& gamma, const DualVector& mu,
                                  const VerifyOptions& opt) {
  opt.validate();
  if (gamma.algebra != sys.algebra || mu.algebra() != sys.algebra) {
    throw TagMismatch("section and momentum value must match the system algebra");
  }
  if (opt.state && opt.state->algebra() != sys.algebra) throw TagMismatch("fixed state must match the system algebra");

  ResidualReport rep;
  rep.system = sys.label;
  rep.section = gamma.label;
  rep.samples = opt.samples;
  rep.tol = opt.tol;
  rep.seed = opt.seed;
  rep.mode = opt.mode;
  rep.per_sample.resize(opt.samples);

  parallel_for(opt.samples, opt.threads, [&](std::size_t i) {
    const GroupElement g = sample_group(sys.algebra, opt.seed, i);
    const DualVector value = gamma(g);
    const DualVector state = opt.mode == HjMode::fixed_state ? *opt.state : value;
    auto [hj, numerators] = hj_terms(sys, state, value);

    SampleResidual& s = rep.per_sample[i];
    s.index = i;
    s.rotation = g.rotation();
    s.translation = g.translation();
    s.state = state.components();
    s.section = value.components();
    s.hj = std::move(hj);
    s.numerators = std::move(numerators);
    s.hj_norm = s.hj.cwiseAbs().maxCoeff();
    s.relatedness = relatedness_residual(sys, gamma, g, opt.step);
    s.closedness = closedness_frame_max(gamma, g, opt.step);
    s.consistent = (s.hj_norm <= opt.tol) == (s.relatedness <= opt.tol);
  });

  for (const auto& s : rep.per_sample) {
    rep.hj_max = std::max(rep.hj_max, s.hj_norm);
    rep.relatedness_max = std::max(rep.relatedness_max, s.relatedness);
    rep.closedness_max = std::max(rep.closedness_max, s.closedness);
    if (!s.consistent) rep.verdict = Verdict::inconsistent;
  }
  const MomentumLevel level = momentum_level_check(gamma, mu, opt.samples, opt.seed);
  rep.momentum_defect = level.momentum_defect;
  rep.invariance_defect = level.invariance_defect;

  for (double v : {rep.hj_max, rep.relatedness_max, rep.closedness_max, rep.momentum_defect, rep.invariance_defect}) {
    if (!std::isfinite(v)) throw NonFiniteValue("residual report contains a non-finite value");
  }
  return rep;
}

std::vector<VecX> canonical_points(int n, std::size_t count, double half_width, std::uint64_t seed) {
  if (n < 1 || count < 1) throw InvalidParameter("need a positive dimension and point count");
  if (!(half_width >= 0.0)) throw InvalidParameter("half width must be nonnegative");
  std::vector<VecX> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    VecX q(n);
    if (n == 1) {
      q[0] = count == 1 ? 0.0 : -half_width + 2.0 * half_width * static_cast<double>(i) / (count - 1);
    } else {
      auto rng = sample_stream(seed, i);
      for (int k = 0; k < n; ++k) q[k] = uniform(rng, -half_width, half_width);
    }
    pts.push_back(q);
  }
  return pts;
}

CanonicalReport verify_canonical(const CanonicalSystem& sys, const CanonicalSection& gamma,
                                 const std::vector<VecX>& points, double tol, double step) {
  if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
  if (points.empty()) throw InvalidParameter("no evaluation points");
  CanonicalReport rep;
  rep.system = sys.label;
  rep.section = gamma.label;
  rep.tol = tol;
  for (const VecX& q : points) {
    CanonicalPoint pt;
    pt.q = q;
    pt.p = gamma(q);
    pt.hj = hj_residual_canonical(sys, gamma, q, step);
    pt.hj_norm = pt.hj.cwiseAbs().maxCoeff();
    pt.relatedness = relatedness_residual_canonical(sys, gamma, q, step);
    pt.curl = curl_defect(gamma, q, step);
    pt.consistent = (pt.hj_norm <= tol) == (pt.relatedness <= tol);
    rep.hj_max = std::max(rep.hj_max, pt.hj_norm);
    rep.relatedness_max = std::max(rep.relatedness_max, pt.relatedness);
    rep.curl_max = std::max(rep.curl_max, pt.curl);
    if (!pt.consistent) rep.verdict = Verdict::inconsistent;
    rep.per_point.push_back(std::move(pt));
  }
  return rep;
}

}  // namespace geomech
