#ifndef GEOMECH_IO_HPP
#define GEOMECH_IO_HPP

// CSV and JSON serialization of trajectories and reports.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "geomech/dynamics.hpp"
#include "geomech/selftest.hpp"
#include "geomech/verify.hpp"

namespace geomech {

/// Shortest-round-trip-safe text for a double: printf "%.17g".
std::string format_double(double v);

/// Header row, then one row per sample:
///   t, state components, energy, casimir_1.., M1..M3 (when recorded).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

nlohmann::json vector_json(const VecX& v);
nlohmann::json to_json(const DriftReport& r);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const CanonicalReport& r);
nlohmann::json to_json(const SelftestReport& r);

/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace geomech

#endif  // GEOMECH_IO_HPP
