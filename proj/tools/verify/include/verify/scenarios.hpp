#pragma once

// Named verification suites and their machine-readable reports.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace verify {

/// File read or write failure (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::string scenario;
  std::uint64_t seed = 0;
  int points = 100;
  int lattice = 8;
  /// Per-check tolerance overrides, keyed by check name.
  std::map<std::string, double> tolerances;
  std::string out;
  /// lattice-maxwell only: where to export the solved field.
  std::string export_path;

  /// Throws std::invalid_argument on unknown scenario, points < 1, lattice < 4 or tolerance <= 0.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Reads a JSON config. Missing fields keep their defaults.
/// Throws IoError if the file cannot be read, std::invalid_argument on malformed content.
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});

struct CheckRecord {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time = 0.0;
  /// Set for range checks: the measured quantity whose deviation is max_residual.
  std::optional<double> measured;
  std::optional<std::string> error;
};

struct Report {
  ScenarioConfig config;
  std::vector<CheckRecord> checks;
  bool pass = false;
  std::string version;

  nlohmann::json to_json() const;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
};

const std::vector<ScenarioInfo>& list_scenarios();
bool is_scenario(const std::string& name);

/// Runs one scenario. Throws std::invalid_argument for an invalid config, IoError if the export fails.
Report run_scenario(const ScenarioConfig& cfg);

}  // namespace verify
