#include "actigel/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "actigel/errors.hpp"

namespace actigel::config {

using nlohmann::json;

namespace {

const std::set<std::string> kScenarios = {"flatfilm",    "smallangle",
                                          "lubrication", "lep",
                                          "diagnostics", "crosscheck"};

double get_num(const json& obj, const std::string& section,
               const std::string& key, double fallback, bool* present = nullptr) {
  if (!obj.contains(key)) {
    if (present) *present = false;
    return fallback;
  }
  if (present) *present = true;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError(section + "." + key + ": expected a number");
  return v.get<double>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void parse_material(const json& j, MaterialParams& p) {
  if (!j.contains("material")) return;
  const json& m = j.at("material");
  p.xi = get_num(m, "material", "xi", p.xi);
  p.gamma_rot = get_num(m, "material", "gamma_rot", p.gamma_rot);
  p.mu = get_num(m, "material", "mu", p.mu);
  p.l1 = get_num(m, "material", "l1", p.l1);
  p.a2 = get_num(m, "material", "a2", p.a2);
  p.c2 = get_num(m, "material", "c2", p.c2);
  p.activity = get_num(m, "material", "activity", p.activity);
  p.lambda1 = get_num(m, "material", "lambda1", p.lambda1);
  p.zeta = get_num(m, "material", "zeta", p.zeta);
}

void parse_anchoring(const json& j, AnchoringData& bc) {
  if (!j.contains("anchoring")) return;
  const json& a = j.at("anchoring");
  bc.theta1 = get_num(a, "anchoring", "theta1", bc.theta1);
  bc.theta2 = get_num(a, "anchoring", "theta2", bc.theta2);
  bc.q1 = get_num(a, "anchoring", "q1", bc.q1);
  bc.q2 = get_num(a, "anchoring", "q2", bc.q2);
}

void parse_geometry(const json& j, GeometryConfig& g) {
  if (!j.contains("geometry")) return;
  const json& m = j.at("geometry");
  g.eta = get_num(m, "geometry", "eta", g.eta);
  g.eta_xxx = get_num(m, "geometry", "eta_xxx", g.eta_xxx);
  g.x1_nodes = static_cast<std::size_t>(
      get_num(m, "geometry", "x1_nodes", static_cast<double>(g.x1_nodes)));
  g.x1_length = get_num(m, "geometry", "x1_length", g.x1_length);
  g.column_nodes = static_cast<std::size_t>(get_num(
      m, "geometry", "column_nodes", static_cast<double>(g.column_nodes)));
  g.perturbation_amplitude =
      get_num(m, "geometry", "perturbation_amplitude", g.perturbation_amplitude);
  g.perturbation_mode = static_cast<int>(get_num(
      m, "geometry", "perturbation_mode", g.perturbation_mode));
}

void parse_solver(const json& j, SolverConfig& s) {
  if (!j.contains("solver")) return;
  const json& m = j.at("solver");
  s.tol = get_num(m, "solver", "tol", s.tol);
  s.dt = get_num(m, "solver", "dt", s.dt);
  s.t_end = get_num(m, "solver", "t_end", s.t_end);
  s.threads = static_cast<int>(get_num(m, "solver", "threads", s.threads));
  s.snapshot_every = static_cast<int>(
      get_num(m, "solver", "snapshot_every", s.snapshot_every));
  s.min_eta_floor = get_num(m, "solver", "min_eta_floor", s.min_eta_floor);
  if (m.contains("mode")) {
    const std::string v = m.at("mode").get<std::string>();
    if (v == "full")
      s.mode = lubrication::ColumnMode::full;
    else if (v == "constant_q")
      s.mode = lubrication::ColumnMode::constant_q;
    else if (v == "forced_constant")
      s.mode = lubrication::ColumnMode::forced_constant;
    else
      throw ConfigError("solver.mode: unknown value '" + v + "'");
  }
  if (m.contains("third_derivative")) {
    const std::string v = m.at("third_derivative").get<std::string>();
    if (v == "fourth_order")
      s.third_derivative = lubrication::ThirdDerivative::fourth_order;
    else if (v == "composed")
      s.third_derivative = lubrication::ThirdDerivative::composed_centered;
    else
      throw ConfigError("solver.third_derivative: unknown value '" + v + "'");
  }
  if (m.contains("advection")) {
    const std::string v = m.at("advection").get<std::string>();
    if (v == "upwind")
      s.advection = smallangle::Advection::upwind;
    else if (v == "centered")
      s.advection = smallangle::Advection::centered;
    else
      throw ConfigError("solver.advection: unknown value '" + v + "'");
  }
  for (const char* key : {"q2_profile", "activity_profile"}) {
    if (!m.contains(key)) continue;
    const json& arr = m.at(key);
    if (!arr.is_array())
      throw ConfigError(std::string("solver.") + key + ": expected an array");
    std::vector<double> vals;
    for (const auto& v : arr) vals.push_back(v.get<double>());
    if (std::string(key) == "q2_profile")
      s.q2_profile = vals;
    else
      s.activity_profile = vals;
  }
}

void parse_diagnostics(const json& j, DiagnosticsConfig& d) {
  if (!j.contains("diagnostics")) return;
  const json& m = j.at("diagnostics");
  if (m.contains("field")) d.field = m.at("field").get<std::string>();
  d.nx = static_cast<std::size_t>(
      get_num(m, "diagnostics", "nx", static_cast<double>(d.nx)));
  d.nz = static_cast<std::size_t>(
      get_num(m, "diagnostics", "nz", static_cast<double>(d.nz)));
  d.core_width = get_num(m, "diagnostics", "core_width", d.core_width);
  d.q_threshold = get_num(m, "diagnostics", "q_threshold", d.q_threshold);
}

void parse_output(const json& j, OutputConfig& o) {
  if (!j.contains("output")) return;
  const json& m = j.at("output");
  if (m.contains("dir")) o.dir = m.at("dir").get<std::string>();
  if (m.contains("prefix")) o.prefix = m.at("prefix").get<std::string>();
}

}  // namespace

ScenarioConfig parse(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");
  if (!j.contains("scenario"))
    throw ConfigError(origin + ": missing required field 'scenario'");
  ScenarioConfig cfg;
  try {
    cfg.scenario = j.at("scenario").get<std::string>();
  } catch (const json::exception&) {
    throw ConfigError(origin + ": 'scenario' must be a string");
  }
  if (!kScenarios.count(cfg.scenario))
    throw ConfigError(origin + ": unknown scenario '" + cfg.scenario + "'");
  try {
    parse_material(j, cfg.material);
    parse_anchoring(j, cfg.anchoring);
    parse_geometry(j, cfg.geometry);
    parse_solver(j, cfg.solver);
    parse_diagnostics(j, cfg.diagnostics);
    parse_output(j, cfg.output);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  cfg.material.validate();
  if (!(cfg.geometry.eta > 0.0))
    throw ConfigError(origin + ": geometry.eta must be positive");
  if (cfg.geometry.column_nodes < 5)
    throw ConfigError(origin + ": geometry.column_nodes must be at least 5");
  cfg.raw = j.dump(2);
  return cfg;
}

ScenarioConfig load(const std::string& path) {
  return parse(read_file(path), path);
}

std::vector<ValidationIssue> validate_file(const std::string& path) {
  std::vector<ValidationIssue> issues;
  auto error = [&](const std::string& field, const std::string& msg) {
    issues.push_back({ValidationIssue::Severity::error, field, msg});
  };
  auto warn = [&](const std::string& field, const std::string& msg) {
    issues.push_back({ValidationIssue::Severity::warning, field, msg});
  };

  ScenarioConfig cfg;
  try {
    cfg = load(path);
  } catch (const SolverError& e) {
    error("config", e.what());
    return issues;
  }

  // physical-range advisories
  const double fa = f_A(cfg.anchoring.q1, cfg.anchoring.theta1, cfg.material);
  if (std::abs(fa) < 0.1)
    warn("anchoring", "f_A(q1, theta1) = " + std::to_string(fa) +
                          " is close to zero; the velocity closure is "
                          "near-singular");
  const double fb = f_B(cfg.anchoring.q2, cfg.anchoring.theta2, cfg.material);
  if (std::abs(fb) < 0.1)
    warn("anchoring", "f_B(q2, theta2) = " + std::to_string(fb) +
                          " is close to zero; the surface closure is "
                          "near-singular");
  if (cfg.scenario == "flatfilm" && cfg.material.passive() &&
      std::abs(cfg.anchoring.q1 - cfg.anchoring.q2) < 1e-12) {
    const double slope =
        (cfg.anchoring.theta2 - cfg.anchoring.theta1) / cfg.geometry.eta;
    const double radicand = 2.0 * cfg.material.a2 / cfg.material.c2 -
                            8.0 * cfg.material.l1 / cfg.material.c2 * slope * slope;
    if (radicand < 0.0)
      warn("anchoring",
           "trivial flat solution has a negative radicand; the run will "
           "report NoSolution");
  }
  if ((cfg.scenario == "lubrication" || cfg.scenario == "lep" ||
       cfg.scenario == "smallangle") &&
      cfg.solver.t_end <= 0.0)
    warn("solver", "t_end is not positive; the evolution will be empty");
  if (!cfg.solver.q2_profile.empty() &&
      cfg.solver.q2_profile.size() != cfg.geometry.x1_nodes)
    error("solver.q2_profile", "length must equal geometry.x1_nodes");
  if (!cfg.solver.activity_profile.empty() &&
      cfg.solver.activity_profile.size() != cfg.geometry.x1_nodes)
    error("solver.activity_profile", "length must equal geometry.x1_nodes");
  return issues;
}

}  // namespace actigel::config
