#ifndef GEOMECH_SELFTEST_HPP
#define GEOMECH_SELFTEST_HPP

// Randomized invariant suite for the Lie-Poisson brackets on so*(3) and se*(3).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace geomech {

struct SelftestCase {
  std::string name;  // e.g. "jacobi/se3"
  std::size_t instances = 0;
  double max_defect = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SelftestCase> cases;

  bool passed() const;
  /// Largest defect among cases whose name starts with `prefix`.
  double max_defect(const std::string& prefix) const;
};

/// Antisymmetry (<= 1e-12), Leibniz (<= 1e-8) and Jacobi (<= 1e-6) on random
/// polynomial fields of degree <= 2, closed-form brackets against the generic
/// one (<= 1e-9), and Casimir annihilation for random rigid bodies and heavy
/// tops (<= 1e-8).
SelftestReport bracket_selftest(std::uint64_t seed, std::size_t instances = 100);

}  // namespace geomech

#endif  // GEOMECH_SELFTEST_HPP
