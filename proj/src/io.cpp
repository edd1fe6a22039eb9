#include "geomech/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace geomech {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t";
  for (const auto& l : traj.state_labels) out << ',' << l;
  out << ",energy";
  for (std::size_t i = 0; i < traj.casimir_names.size(); ++i) out << ",casimir_" << i + 1;
  if (traj.has_momentum()) out << ",M1,M2,M3";
  out << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) out << ',' << format_double(traj.states[k][i]);
    out << ',' << format_double(traj.energy[k]);
    for (Eigen::Index i = 0; i < traj.casimirs[k].size(); ++i) out << ',' << format_double(traj.casimirs[k][i]);
    if (traj.has_momentum()) {
      for (int i = 0; i < 3; ++i) out << ',' << format_double(traj.momentum[k][i]);
    }
    out << '\n';
  }
}

nlohmann::json vector_json(const VecX& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

namespace {

nlohmann::json stat_json(const DriftStat& d) { return {{"name", d.name}, {"max", d.max}, {"rms", d.rms}}; }

nlohmann::json matrix_json(const Mat3& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

}  // namespace

nlohmann::json to_json(const DriftReport& r) {
  nlohmann::json j;
  j["energy"] = stat_json(r.energy);
  j["casimirs"] = nlohmann::json::array();
  for (const auto& c : r.casimirs) j["casimirs"].push_back(stat_json(c));
  j["momentum"] = nlohmann::json::array();
  for (const auto& m : r.momentum) j["momentum"].push_back(stat_json(m));
  return j;
}

nlohmann::json to_json(const ResidualReport& r) {
  nlohmann::json j;
  j["system"] = r.system;
  j["section"] = r.section;
  j["samples"] = r.samples;
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  j["mode"] = std::string(to_string(r.mode));
  j["symplectic_hypothesis"] = "assumed";
  j["hj_max"] = r.hj_max;
  j["relatedness_max"] = r.relatedness_max;
  j["closedness_max"] = r.closedness_max;
  j["momentum_defect"] = r.momentum_defect;
  j["invariance_defect"] = r.invariance_defect;
  j["verdict"] = std::string(to_string(r.verdict));
  nlohmann::json per = nlohmann::json::array();
  for (const auto& s : r.per_sample) {
    nlohmann::json e;
    e["index"] = s.index;
    e["rotation"] = matrix_json(s.rotation);
    if (s.section.size() == 6) e["translation"] = {s.translation[0], s.translation[1], s.translation[2]};
    e["state"] = vector_json(s.state);
    e["section"] = vector_json(s.section);
    e["hj"] = vector_json(s.hj);
    if (s.numerators.size() > 0) e["numerators"] = vector_json(s.numerators);
    e["hj_norm"] = s.hj_norm;
    e["relatedness"] = s.relatedness;
    e["closedness"] = s.closedness;
    e["consistent"] = s.consistent;
    per.push_back(std::move(e));
  }
  j["per_sample"] = std::move(per);
  return j;
}

nlohmann::json to_json(const CanonicalReport& r) {
  nlohmann::json j;
  j["system"] = r.system;
  j["section"] = r.section;
  j["samples"] = r.per_point.size();
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  j["symplectic_hypothesis"] = "assumed";
  j["hj_max"] = r.hj_max;
  j["relatedness_max"] = r.relatedness_max;
  j["curl_max"] = r.curl_max;
  j["verdict"] = std::string(to_string(r.verdict));
  nlohmann::json per = nlohmann::json::array();
  for (const auto& p : r.per_point) {
    per.push_back({{"q", vector_json(p.q)},
                   {"p", vector_json(p.p)},
                   {"hj", vector_json(p.hj)},
                   {"hj_norm", p.hj_norm},
                   {"relatedness", p.relatedness},
                   {"curl", p.curl},
                   {"consistent", p.consistent}});
  }
  j["per_sample"] = std::move(per);
  return j;
}

nlohmann::json to_json(const SelftestReport& r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  j["cases"] = nlohmann::json::array();
  for (const auto& c : r.cases) {
    j["cases"].push_back({{"name", c.name},
                          {"instances", c.instances},
                          {"max_defect", c.max_defect},
                          {"threshold", c.threshold},
                          {"passed", c.passed}});
  }
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameter("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw InvalidParameter("failed writing '" + path + "'");
}

}  // namespace geomech
