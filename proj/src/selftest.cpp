#include "geomech/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "geomech/sampling.hpp"
#include "geomech/systems.hpp"

namespace geomech {

bool SelftestReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const SelftestCase& c) { return c.passed; });
}

double SelftestReport::max_defect(const std::string& prefix) const {
  double m = 0.0;
  for (const auto& c : cases) {
    if (c.name.rfind(prefix, 0) == 0) m = std::max(m, c.max_defect);
  }
  return m;
}

namespace {

VecX uniform_vec(std::mt19937_64& rng, int n) {
  VecX v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(rng, -1.0, 1.0);
  return v;
}

ScalarField random_field(std::mt19937_64& rng, Algebra a) {
  const int n = dimension(a);
  MatX Q(n, n);
  for (int i = 0; i < n; ++i) Q.col(i) = uniform_vec(rng, n);
  const double c = uniform(rng, -1.0, 1.0);
  const VecX b = uniform_vec(rng, n);
  return quadratic_field(a, c, b, Q);
}

DualVector random_point(std::mt19937_64& rng, Algebra a) {
  return DualVector::from_components(a, uniform_vec(rng, dimension(a)));
}

LiePoissonSystem random_system(std::mt19937_64& rng, Algebra a) {
  const Vec3 inertia = uniform_vec3(rng, 0.5, 3.0);
  if (a == Algebra::so3) return rigid_body_system({inertia});
  return heavy_top_system(HeavyTopParams::with_mgh(inertia, uniform(rng, 0.0, 2.0), random_unit_vec3(rng)));
}

class Suite {
 public:
  Suite(std::uint64_t seed, std::size_t instances) : seed_(seed), instances_(instances) { report_.seed = seed; }

  void run(const std::string& name, double threshold, const std::function<double(std::mt19937_64&)>& trial) {
    SelftestCase c{name, instances_, 0.0, threshold, false};
    const std::uint64_t salt = splitmix64(seed_ + report_.cases.size() + 1);
    for (std::size_t i = 0; i < instances_; ++i) {
      auto rng = sample_stream(salt, i);
      const double d = trial(rng);
      c.max_defect = std::isfinite(d) ? std::max(c.max_defect, d) : INFINITY;
    }
    c.passed = c.max_defect <= threshold;
    report_.cases.push_back(c);
  }

  SelftestReport take() { return std::move(report_); }

 private:
  std::uint64_t seed_;
  std::size_t instances_;
  SelftestReport report_;
};

}  // namespace

SelftestReport bracket_selftest(std::uint64_t seed, std::size_t instances) {
  if (instances < 1) throw InvalidParameter("selftest needs at least one instance");
  Suite suite(seed, instances);
  constexpr BracketSign s = BracketSign::minus;

  for (Algebra a : {Algebra::so3, Algebra::se3}) {
    const std::string tag = "/" + std::string(to_string(a));

    suite.run("antisymmetry" + tag, 1e-12, [a](std::mt19937_64& rng) {
      const ScalarField f = random_field(rng, a), g = random_field(rng, a);
      const DualVector mu = random_point(rng, a);
      return std::abs(lie_poisson_bracket(f, g, mu, s) + lie_poisson_bracket(g, f, mu, s));
    });

    suite.run("leibniz" + tag, 1e-8, [a](std::mt19937_64& rng) {
      const ScalarField f = random_field(rng, a), g = random_field(rng, a), h = random_field(rng, a);
      const DualVector mu = random_point(rng, a);
      const double lhs = lie_poisson_bracket(product(f, g), h, mu, s);
      const double rhs = f(mu) * lie_poisson_bracket(g, h, mu, s) + g(mu) * lie_poisson_bracket(f, h, mu, s);
      return std::abs(lhs - rhs);
    });

    suite.run("jacobi" + tag, 1e-6, [a](std::mt19937_64& rng) {
      const ScalarField f = random_field(rng, a), g = random_field(rng, a), h = random_field(rng, a);
      const DualVector mu = random_point(rng, a);
      return std::abs(lie_poisson_bracket(f, bracket_field(g, h, s), mu, s) +
                      lie_poisson_bracket(g, bracket_field(h, f, s), mu, s) +
                      lie_poisson_bracket(h, bracket_field(f, g, s), mu, s));
    });

    suite.run("closed-form" + tag, 1e-9, [a](std::mt19937_64& rng) {
      const ScalarField f = random_field(rng, a), g = random_field(rng, a);
      const DualVector mu = random_point(rng, a);
      const double generic = lie_poisson_bracket(f, g, mu, s);
      const double closed = a == Algebra::so3 ? rigid_body_bracket(f, g, mu.pi(), s)
                                              : heavy_top_bracket(f, g, mu.pi(), mu.gamma(), s);
      return std::abs(generic - closed);
    });

    suite.run("casimir" + tag, 1e-8, [a](std::mt19937_64& rng) {
      const LiePoissonSystem sys = random_system(rng, a);
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        const ScalarField f = random_field(rng, a);
        const DualVector mu = random_point(rng, a);
        for (const auto& c : sys.casimirs) worst = std::max(worst, std::abs(lie_poisson_bracket(c.field, f, mu, s)));
      }
      return worst;
    });
  }
  return suite.take();
}

}  // namespace geomech
