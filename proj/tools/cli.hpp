#ifndef GEOMECH_CLI_HPP
#define GEOMECH_CLI_HPP

// Command-line front end.  Exit codes: 0 success, 1 verification or numerical
// failure, 2 usage or configuration error.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace geomech::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kSchemaVersion = 1;

/// Everything a run can be configured with.  Config files and flags use the
/// same key names (flags spell underscores as dashes).
struct RunConfig {
  std::string system = "rigid-body";
  std::vector<double> inertia{1.0, 2.0, 3.0};
  double mgh = 1.0;
  std::vector<double> chi{0.0, 0.0, 1.0};
  int dimension = 1;
  std::string hamiltonian = "harmonic";

  std::string integrator = "explicit-rk4";
  double dt = 1e-3;
  std::uint64_t steps = 1000;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  bool with_group = false;
  std::vector<double> pi0{1.0, 1.0, 1.0};
  std::vector<double> gamma0{0.0, 0.0, 1.0};
  std::vector<double> q0;
  std::vector<double> p0;

  std::string section = "scaled-inertia-family";
  std::vector<double> mu;
  std::vector<double> mu0;
  double k = 1.0;
  int axis = 2;
  double epsilon = 0.25;
  std::string base;  // empty: scaled-inertia-family on groups, exact on T*R^n
  double amplitude = 0.1;
  double energy = 0.5;
  double half_width = -1.0;  // negative: section default
  std::uint64_t samples = 100;
  double tol = 1e-5;
  std::string mode = "section-state";
  std::vector<double> state;
  unsigned threads = 1;

  std::uint64_t seed = 1;
  std::string csv;
  std::string json;
  std::string out;
};

/// Sets one key from its textual form (lists are comma separated).
/// Throws InvalidParameter on unknown keys or malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Applies a config document.  Requires "schema_version": 1; unknown keys
/// are rejected.
void apply_config(RunConfig& cfg, const nlohmann::json& doc);

/// Keys accepted by apply_setting, in documentation order.
const std::vector<std::string>& setting_keys();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geomech::cli

#endif  // GEOMECH_CLI_HPP
