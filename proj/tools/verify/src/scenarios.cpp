#include "verify/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mfl/version.hpp"
#include "suite.hpp"

namespace verify {

namespace {

const std::vector<ScenarioInfo> kScenarios = {
    {"algebra", "Clifford algebra and extensor invariants"},
    {"identities-flat", "flat product-rule identities, derivative split and Gauss"},
    {"identities-gauge", "gauge and spinor identities on rotor and general backgrounds"},
    {"derivatives", "multivector derivative rules and directional finite-difference oracles"},
    {"maxwell-flat", "flat Maxwell residuals, variations and decomposition"},
    {"dirac-flat", "flat Dirac-Hestenes residuals, substitution and decomposition"},
    {"maxwell-gauge", "gauge Maxwell residuals on rotor backgrounds"},
    {"dirac-gauge", "gauge Dirac-Hestenes residuals on rotor backgrounds"},
    {"lattice-maxwell", "lattice duality, Gauss, Maxwell solve and convergence order"},
};

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

const std::vector<ScenarioInfo>& list_scenarios() { return kScenarios; }

bool is_scenario(const std::string& name) {
  for (const auto& s : kScenarios) {
    if (s.name == name) return true;
  }
  return false;
}

void ScenarioConfig::validate() const {
  if (!is_scenario(scenario)) throw std::invalid_argument("unknown scenario '" + scenario + "'");
  if (points < 1) throw std::invalid_argument("points must be >= 1");
  if (lattice < 4) throw std::invalid_argument("lattice N must be >= 4");
  for (const auto& [name, tol] : tolerances) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tolerance for '" + name + "' must be > 0");
  }
}

nlohmann::json ScenarioConfig::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["points"] = points;
  j["lattice"] = lattice;
  j["tolerances"] = tolerances;
  j["out"] = out;
  return j;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("malformed config: top level must be an object");
  try {
    if (j.contains("scenario")) base.scenario = j.at("scenario").get<std::string>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("points")) base.points = j.at("points").get<int>();
    if (j.contains("lattice")) base.lattice = j.at("lattice").get<int>();
    if (j.contains("out")) base.out = j.at("out").get<std::string>();
    if (j.contains("tolerances")) base.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  return base;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["config"] = config.to_json();
  j["version"] = version;
  j["pass"] = pass;
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json r;
    r["name"] = c.name;
    r["max_residual"] = number_or_null(c.max_residual);
    r["tolerance"] = c.tolerance;
    r["pass"] = c.pass;
    r["wall_time"] = c.wall_time;
    if (c.measured) r["measured"] = number_or_null(*c.measured);
    if (c.error) r["error"] = *c.error;
    arr.push_back(std::move(r));
  }
  j["checks"] = std::move(arr);
  return j;
}

Report run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Suite s(cfg);
  const std::string& n = cfg.scenario;
  if (n == "algebra") run_algebra(s);
  else if (n == "identities-flat") run_identities_flat(s);
  else if (n == "identities-gauge") run_identities_gauge(s);
  else if (n == "derivatives") run_derivatives(s);
  else if (n == "maxwell-flat") run_maxwell_flat(s);
  else if (n == "dirac-flat") run_dirac_flat(s);
  else if (n == "maxwell-gauge") run_maxwell_gauge(s);
  else if (n == "dirac-gauge") run_dirac_gauge(s);
  else run_lattice_maxwell(s);

  Report r;
  r.config = cfg;
  r.version = mfl::kVersion;
  r.checks = s.take();
  r.pass = !r.checks.empty();
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  return r;
}

}  // namespace verify
