#ifndef GEOMECH_VERIFY_HPP
#define GEOMECH_VERIFY_HPP

// Equivalence experiment: at sampled configurations, compare the reduced
// Hamilton-Jacobi residual of a section with its relatedness residual.
// A sample is consistent when both are <= tol or both are > tol.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geomech/hamilton_jacobi.hpp"

namespace geomech {

/// Where the Hamilton-Jacobi residual is evaluated: at a state supplied once
/// for all samples, or at the section value itself (Pi := gamma_bar(g)).
enum class HjMode { fixed_state, section_state };

std::string_view to_string(HjMode m) noexcept;
/// Parses "fixed-state" or "section-state".
HjMode parse_hj_mode(std::string_view name);

enum class Verdict { consistent, inconsistent };

std::string_view to_string(Verdict v) noexcept;

struct VerifyOptions {
  std::size_t samples = 100;
  double tol = 1e-5;
  std::uint64_t seed = 0;
  HjMode mode = HjMode::section_state;
  std::optional<DualVector> state;  // required for fixed_state
  double step = kGroupProbeStep;
  unsigned threads = 1;

  void validate() const;
};

struct SampleResidual {
  std::size_t index = 0;
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  VecX state;       // point at which the HJ residual was evaluated
  VecX section;     // gamma_body(g)
  VecX hj;          // vector-field residual
  VecX numerators;  // polynomial form for the rigid body and heavy top, empty otherwise
  double hj_norm = 0.0;
  double relatedness = 0.0;
  double closedness = 0.0;
  bool consistent = true;
};

struct ResidualReport {
  std::string system;
  std::string section;
  std::size_t samples = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  HjMode mode = HjMode::section_state;
  double hj_max = 0.0;
  double relatedness_max = 0.0;
  double closedness_max = 0.0;
  double momentum_defect = 0.0;
  double invariance_defect = 0.0;
  Verdict verdict = Verdict::consistent;
  std::vector<SampleResidual> per_sample;
};

/// Group points are drawn with sample_group(algebra, seed, i); the report
/// does not depend on opt.threads.
ResidualReport verify_equivalence(const LiePoissonSystem& sys, const BodySection& gamma, const DualVector& mu,
                                  const VerifyOptions& opt);

struct CanonicalPoint {
  VecX q;
  VecX p;
  VecX hj;
  double hj_norm = 0.0;
  double relatedness = 0.0;
  double curl = 0.0;
  bool consistent = true;
};

struct CanonicalReport {
  std::string system;
  std::string section;
  double tol = 0.0;
  std::uint64_t seed = 0;
  double hj_max = 0.0;
  double relatedness_max = 0.0;
  double curl_max = 0.0;
  Verdict verdict = Verdict::consistent;
  std::vector<CanonicalPoint> per_point;
};

/// Evaluation points in the box |q_i| <= half_width: an evenly spaced grid
/// including both ends when n = 1, seeded uniform samples otherwise.
std::vector<VecX> canonical_points(int n, std::size_t count, double half_width, std::uint64_t seed);

CanonicalReport verify_canonical(const CanonicalSystem& sys, const CanonicalSection& gamma,
                                 const std::vector<VecX>& points, double tol, double step = 1e-5);

}  // namespace geomech

#endif  // GEOMECH_VERIFY_HPP
