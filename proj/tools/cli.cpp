#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geomech/dynamics.hpp"
#include "geomech/io.hpp"
#include "geomech/sampling.hpp"
#include "geomech/sections.hpp"
#include "geomech/selftest.hpp"
#include "geomech/verify.hpp"

namespace geomech::cli {

namespace {

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw InvalidParameter("'" + key + "' expects a finite number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] != '-') v = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InvalidParameter("'" + key + "' expects a nonnegative integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw InvalidParameter("'" + key + "' expects a comma-separated list");
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw InvalidParameter("'" + key + "' expects true or false");
}

std::string one_of(const std::string& key, const std::string& text, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (text == a) return text;
  }
  std::string msg = "'" + key + "' must be one of";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw InvalidParameter(msg + ", got '" + text + "'");
}

Vec3 vec3(const std::string& key, const std::vector<double>& v) {
  if (v.size() != 3) throw InvalidParameter("'" + key + "' needs exactly 3 components");
  return Vec3(v[0], v[1], v[2]);
}

VecX vecx(const std::string& key, const std::vector<double>& v, int n) {
  if (static_cast<int>(v.size()) != n) {
    throw InvalidParameter("'" + key + "' needs exactly " + std::to_string(n) + " components");
  }
  return Eigen::Map<const VecX>(v.data(), n);
}

std::string json_to_text(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!e.is_number()) throw InvalidParameter("config key '" + key + "' must be an array of numbers");
      if (!s.empty()) s += ',';
      s += format_double(e.get<double>());
    }
    return s;
  }
  throw InvalidParameter("config key '" + key + "' has an unsupported value type");
}

}  // namespace

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys{
      "system",  "inertia",   "mgh",     "chi",        "dimension", "hamiltonian", "integrator", "dt",
      "steps",   "newton_tol", "newton_max_iter", "with_group", "pi0", "gamma0", "q0", "p0",
      "section", "mu",        "mu0",     "k",          "axis",      "epsilon",     "base",       "amplitude",
      "energy",  "half_width", "samples", "tol",       "mode",      "state",       "threads",    "seed",
      "csv",     "json",      "out"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "system") c.system = one_of(key, v, {"rigid-body", "heavy-top", "canonical"});
  else if (key == "inertia") c.inertia = parse_list(key, v);
  else if (key == "mgh") c.mgh = parse_double(key, v);
  else if (key == "chi") c.chi = parse_list(key, v);
  else if (key == "dimension") c.dimension = static_cast<int>(parse_unsigned(key, v));
  else if (key == "hamiltonian") c.hamiltonian = one_of(key, v, {"harmonic", "free-particle"});
  else if (key == "integrator") c.integrator = std::string(to_string(parse_scheme(v)));
  else if (key == "dt") c.dt = parse_double(key, v);
  else if (key == "steps") c.steps = parse_unsigned(key, v);
  else if (key == "newton_tol") c.newton_tol = parse_double(key, v);
  else if (key == "newton_max_iter") c.newton_max_iter = static_cast<int>(parse_unsigned(key, v));
  else if (key == "with_group") c.with_group = parse_bool(key, v);
  else if (key == "pi0") c.pi0 = parse_list(key, v);
  else if (key == "gamma0") c.gamma0 = parse_list(key, v);
  else if (key == "q0") c.q0 = parse_list(key, v);
  else if (key == "p0") c.p0 = parse_list(key, v);
  else if (key == "section") {
    c.section = one_of(key, v, {"constant-momentum", "body-constant", "scaled-inertia-family", "exact", "perturbed"});
  } else if (key == "mu") c.mu = parse_list(key, v);
  else if (key == "mu0") c.mu0 = parse_list(key, v);
  else if (key == "k") c.k = parse_double(key, v);
  else if (key == "axis") c.axis = static_cast<int>(parse_unsigned(key, v));
  else if (key == "epsilon") c.epsilon = parse_double(key, v);
  else if (key == "base") c.base = one_of(key, v, {"constant-momentum", "body-constant", "scaled-inertia-family", "exact"});
  else if (key == "amplitude") c.amplitude = parse_double(key, v);
  else if (key == "energy") c.energy = parse_double(key, v);
  else if (key == "half_width") c.half_width = parse_double(key, v);
  else if (key == "samples") c.samples = parse_unsigned(key, v);
  else if (key == "tol") c.tol = parse_double(key, v);
  else if (key == "mode") c.mode = std::string(to_string(parse_hj_mode(v)));
  else if (key == "state") c.state = parse_list(key, v);
  else if (key == "threads") c.threads = static_cast<unsigned>(parse_unsigned(key, v));
  else if (key == "seed") c.seed = parse_unsigned(key, v);
  else if (key == "csv") c.csv = v;
  else if (key == "json") c.json = v;
  else if (key == "out") c.out = v;
  else throw InvalidParameter("unknown setting '" + key + "'");
}

void apply_config(RunConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidParameter("config must be a JSON object");
  const auto sv = doc.find("schema_version");
  if (sv == doc.end() || !sv->is_number_integer() || sv->get<int>() != kSchemaVersion) {
    throw InvalidParameter("config needs \"schema_version\": " + std::to_string(kSchemaVersion));
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema_version") continue;
    apply_setting(cfg, key, json_to_text(key, value));
  }
}

// ---------------------------------------------------------------------------

namespace {

LiePoissonSystem lie_system(const RunConfig& c) {
  if (c.system == "rigid-body") return rigid_body_system({vec3("inertia", c.inertia)});
  if (c.system == "heavy-top") {
    return heavy_top_system(HeavyTopParams::with_mgh(vec3("inertia", c.inertia), c.mgh, vec3("chi", c.chi)));
  }
  throw InvalidParameter("system '" + c.system + "' is not a Lie-Poisson system");
}

CanonicalSystem canonical(const RunConfig& c) {
  if (c.dimension < 1) throw InvalidParameter("dimension must be at least 1");
  return c.hamiltonian == "harmonic" ? harmonic_oscillator(c.dimension) : free_particle(c.dimension);
}

IntegratorChoice integrator(const RunConfig& c) {
  IntegratorChoice ch{parse_scheme(c.integrator), c.dt, c.newton_tol, c.newton_max_iter};
  ch.validate();
  return ch;
}

DualVector dual(const std::string& key, const std::vector<double>& v, Algebra a) {
  if (v.empty()) {
    VecX d = VecX::Zero(dimension(a));
    d[2] = 1.0;
    if (a == Algebra::se3) d[5] = 1.0;
    return DualVector::from_components(a, d);
  }
  return DualVector::from_components(a, vecx(key, v, dimension(a)));
}

BodySection body_section(const RunConfig& c, const LiePoissonSystem& sys, const std::string& kind) {
  if (kind == "constant-momentum") return section_from_momentum(dual("mu", c.mu, sys.algebra));
  if (kind == "body-constant") return constant_section(dual("mu0", c.mu0, sys.algebra));
  if (kind == "scaled-inertia-family") {
    ScaledInertiaOptions opt;
    opt.k = c.k;
    opt.axis = c.axis;
    opt.epsilon = c.epsilon;
    return scaled_inertia_family(sys, opt);
  }
  if (kind == "perturbed") {
    const std::string base = c.base.empty() ? "scaled-inertia-family" : c.base;
    if (base == "exact") throw InvalidParameter("base 'exact' is only available for the canonical system");
    return perturbed_section(body_section(c, sys, base), c.amplitude, splitmix64(c.seed ^ 0x70657274ULL));
  }
  throw InvalidParameter("section '" + kind + "' is not available for " + c.system);
}

CanonicalSection canonical_section(const RunConfig& c) {
  const auto exact = [&] {
    return c.hamiltonian == "harmonic" ? harmonic_exact_section(c.dimension, c.energy)
                                       : free_particle_exact_section(c.dimension, c.energy);
  };
  if (c.section == "exact") return exact();
  if (c.section == "perturbed") {
    if (!c.base.empty() && c.base != "exact") throw InvalidParameter("canonical perturbed sections need base 'exact'");
    return scaled_section(exact(), 1.0 + c.amplitude);
  }
  throw InvalidParameter("section '" + c.section + "' is not available for the canonical system");
}

std::string or_default(const std::string& path, const char* fallback) { return path.empty() ? fallback : path; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParameter("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw InvalidParameter("failed writing '" + path + "'");
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const IntegratorChoice ch = integrator(c);
  Trajectory traj;
  if (c.system == "canonical") {
    const CanonicalSystem sys = canonical(c);
    const VecX q0 = c.q0.empty() ? VecX(VecX::Constant(c.dimension, 0.5)) : vecx("q0", c.q0, c.dimension);
    const VecX p0 = c.p0.empty() ? VecX(VecX::Zero(c.dimension)) : vecx("p0", c.p0, c.dimension);
    traj = integrate(sys, q0, p0, ch, c.steps);
  } else {
    const LiePoissonSystem sys = lie_system(c);
    const DualVector nu0 = sys.algebra == Algebra::so3
                               ? DualVector::so3(vec3("pi0", c.pi0))
                               : DualVector::se3(vec3("pi0", c.pi0), vec3("gamma0", c.gamma0));
    traj = integrate(sys, nu0, ch, c.steps, c.with_group);
  }
  const DriftReport drift = diagnostics(traj);

  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  const std::string csv_path = or_default(c.csv, "trajectory.csv");
  const std::string json_path = or_default(c.json, "diagnostics.json");
  write_text_file(csv_path, csv.str());

  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "simulate";
  j["seed"] = c.seed;
  j["system"] = traj.system;
  j["integrator"] = std::string(to_string(ch.scheme));
  j["dt"] = ch.dt;
  j["steps"] = c.steps;
  j["with_group"] = traj.has_momentum();
  j["final_time"] = traj.times.back();
  j["final_state"] = vector_json(traj.states.back());
  j["drift"] = to_json(drift);
  write_json_file(json_path, j);

  out << "simulated " << c.steps << " steps of " << traj.system << " with " << to_string(ch.scheme) << '\n';
  out << "energy drift max " << format_double(drift.energy.max) << '\n';
  for (const auto& cs : drift.casimirs) out << cs.name << " drift max " << format_double(cs.max) << '\n';
  for (const auto& m : drift.momentum) out << m.name << " drift max " << format_double(m.max) << '\n';
  out << "wrote " << csv_path << " and " << json_path << '\n';
  return kExitOk;
}

int cmd_residuals(const RunConfig& c, const std::string& command, std::ostream& out) {
  if (c.samples < 1) throw InvalidParameter("samples must be at least 1");
  nlohmann::json j;
  Verdict verdict = Verdict::consistent;
  double hj_max = 0.0, rel_max = 0.0;
  if (c.system == "canonical") {
    const CanonicalSystem sys = canonical(c);
    const CanonicalSection gamma = canonical_section(c);
    double half = c.half_width;
    if (half < 0.0) half = c.hamiltonian == "harmonic" ? 0.9 * std::sqrt(2.0 * c.energy / c.dimension) : 1.0;
    const auto pts = canonical_points(c.dimension, c.samples, half, c.seed);
    CanonicalReport rep = verify_canonical(sys, gamma, pts, c.tol);
    rep.seed = c.seed;
    j = to_json(rep);
    verdict = rep.verdict;
    hj_max = rep.hj_max;
    rel_max = rep.relatedness_max;
    out << "curl_max " << format_double(rep.curl_max) << '\n';
  } else {
    const LiePoissonSystem sys = lie_system(c);
    const BodySection gamma = body_section(c, sys, c.section);
    VerifyOptions opt;
    opt.samples = c.samples;
    opt.tol = c.tol;
    opt.seed = c.seed;
    opt.mode = parse_hj_mode(c.mode);
    opt.threads = c.threads;
    if (!c.state.empty()) opt.state = DualVector::from_components(sys.algebra, vecx("state", c.state, dimension(sys.algebra)));
    const DualVector mu = !c.mu.empty() ? dual("mu", c.mu, sys.algebra)
                                        : gamma(GroupElement::identity(sys.algebra));
    const ResidualReport rep = verify_equivalence(sys, gamma, mu, opt);
    j = to_json(rep);
    verdict = rep.verdict;
    hj_max = rep.hj_max;
    rel_max = rep.relatedness_max;
    out << "closedness_max " << format_double(rep.closedness_max) << '\n';
    out << "momentum_defect " << format_double(rep.momentum_defect) << '\n';
  }
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  const std::string path = or_default(c.out, command == "check-hj" ? "hj_report.json" : "equivalence_report.json");
  write_json_file(path, j);

  out << "hj_max " << format_double(hj_max) << '\n';
  out << "relatedness_max " << format_double(rel_max) << '\n';
  out << "verdict " << to_string(verdict) << '\n';
  out << "wrote " << path << '\n';
  if (command == "verify-theorem" && verdict == Verdict::inconsistent) return kExitFailure;
  return kExitOk;
}

std::string threshold_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

int cmd_selftest(const RunConfig& c, bool samples_given, std::ostream& out) {
  const SelftestReport rep = bracket_selftest(c.seed, samples_given ? c.samples : 100);
  for (const auto& cs : rep.cases) {
    out << (cs.passed ? "PASS " : "FAIL ") << cs.name << " max_defect " << format_double(cs.max_defect)
        << " threshold " << threshold_text(cs.threshold) << '\n';
  }
  out << "jacobi max defect " << format_double(rep.max_defect("jacobi")) << '\n';
  out << (rep.passed() ? "bracket selftest passed" : "bracket selftest FAILED") << '\n';
  if (!c.out.empty()) {
    nlohmann::json j = to_json(rep);
    j["schema_version"] = kSchemaVersion;
    j["command"] = "bracket-selftest";
    write_json_file(c.out, j);
  }
  return rep.passed() ? kExitOk : kExitFailure;
}

struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config;
  CLI::Option* config_opt = nullptr;
  bool with_group = false;
  CLI::Option* with_group_opt = nullptr;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    for (char& ch : flag) {
      if (ch == '_') ch = '-';
    }
    options[key] = app->add_option(flag, values[key], help);
  }
};

void add_common(CLI::App* app, FlagSet& f) {
  f.config_opt = app->add_option("--config", f.config, "JSON config file (flags override its values)");
  f.add(app, "seed", "64-bit seed for all sampling");
  f.add(app, "system", "rigid-body | heavy-top | canonical");
  f.add(app, "inertia", "principal moments I1,I2,I3");
  f.add(app, "mgh", "heavy top m*g*h");
  f.add(app, "chi", "heavy top body-frame unit vector to the center of mass");
  f.add(app, "dimension", "canonical configuration dimension n");
  f.add(app, "hamiltonian", "canonical Hamiltonian: harmonic | free-particle");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie-Poisson dynamics and Hamilton-Jacobi residual checks", "geomech"};
  app.require_subcommand(1);

  FlagSet sim_flags, hj_flags, thm_flags, st_flags;

  CLI::App* sim = app.add_subcommand("simulate", "integrate a system, write trajectory CSV and diagnostics JSON");
  add_common(sim, sim_flags);
  for (const char* key : {"integrator", "dt", "steps", "newton_tol", "newton_max_iter", "pi0", "gamma0", "q0", "p0"}) {
    sim_flags.add(sim, key, key);
  }
  sim_flags.with_group_opt = sim->add_flag("--with-group", sim_flags.with_group, "co-evolve the attitude (rigid body)");
  sim_flags.add(sim, "csv", "trajectory CSV path (default trajectory.csv)");
  sim_flags.add(sim, "json", "diagnostics JSON path (default diagnostics.json)");

  const auto add_residual_flags = [](CLI::App* sub, FlagSet& f) {
    add_common(sub, f);
    f.add(sub, "section", "constant-momentum | body-constant | scaled-inertia-family | exact | perturbed");
    f.add(sub, "mu", "momentum value (constant-momentum section and momentum check)");
    f.add(sub, "mu0", "value of the body-constant section");
    f.add(sub, "k", "scaled-inertia family factor");
    f.add(sub, "axis", "scaled-inertia family principal axis (0, 1, 2)");
    f.add(sub, "epsilon", "scaled-inertia family modulation depth");
    f.add(sub, "base", "section perturbed by 'perturbed'");
    f.add(sub, "amplitude", "perturbation amplitude");
    f.add(sub, "energy", "energy level of canonical exact sections");
    f.add(sub, "half_width", "canonical evaluation box half width");
    f.add(sub, "samples", "number of sample points");
    f.add(sub, "tol", "residual tolerance");
    f.add(sub, "mode", "section-state | fixed-state");
    f.add(sub, "state", "fixed evaluation state for fixed-state mode");
    f.add(sub, "threads", "worker threads for sampling (0 = all cores)");
    f.add(sub, "out", "report JSON path");
  };
  CLI::App* hj = app.add_subcommand("check-hj", "evaluate Hamilton-Jacobi residuals of a section");
  add_residual_flags(hj, hj_flags);
  CLI::App* thm = app.add_subcommand("verify-theorem", "compare HJ and relatedness residuals sample by sample");
  add_residual_flags(thm, thm_flags);

  CLI::App* st = app.add_subcommand("bracket-selftest", "run the bracket invariant suite");
  st_flags.config_opt = st->add_option("--config", st_flags.config, "JSON config file");
  st_flags.add(st, "seed", "64-bit seed");
  st_flags.add(st, "samples", "random instances per invariant (default 100)");
  st_flags.add(st, "out", "optional JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  FlagSet* flags = sim->parsed() ? &sim_flags : hj->parsed() ? &hj_flags : thm->parsed() ? &thm_flags : &st_flags;
  try {
    RunConfig cfg;
    bool samples_given = false;
    if (flags->config_opt && flags->config_opt->count() > 0) {
      std::ifstream f(flags->config, std::ios::binary);
      if (!f) throw InvalidParameter("cannot read config '" + flags->config + "'");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter("config '" + flags->config + "' is not valid JSON: " + e.what());
      }
      apply_config(cfg, doc);
      samples_given = doc.contains("samples");
    }
    for (const auto& [key, opt] : flags->options) {
      if (opt->count() > 0) apply_setting(cfg, key, flags->values[key]);
    }
    if (flags->with_group_opt && flags->with_group_opt->count() > 0) cfg.with_group = true;
    if (const auto it = flags->options.find("samples"); it != flags->options.end() && it->second->count() > 0) {
      samples_given = true;
    }

    if (sim->parsed()) return cmd_simulate(cfg, out);
    if (hj->parsed()) return cmd_residuals(cfg, "check-hj", out);
    if (thm->parsed()) return cmd_residuals(cfg, "verify-theorem", out);
    return cmd_selftest(cfg, samples_given, out);
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const DomainError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"geomech"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace geomech::cli
