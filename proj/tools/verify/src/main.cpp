#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "verify/scenarios.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void print_listing(bool json) {
  if (json) {
    auto arr = nlohmann::json::array();
    for (const auto& s : verify::list_scenarios()) arr.push_back({{"name", s.name}, {"description", s.description}});
    std::cout << arr.dump(2) << "\n";
    return;
  }
  for (const auto& s : verify::list_scenarios()) std::cout << std::left << std::setw(18) << s.name << s.description << "\n";
}

void print_table(const verify::Report& r) {
  std::cout << "scenario " << r.config.scenario << "  seed " << r.config.seed << "  version " << r.version << "\n";
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "  PASS  " : "  FAIL  ") << std::left << std::setw(36) << c.name << std::right
              << std::scientific << std::setprecision(3) << std::setw(11) << c.max_residual << "  tol "
              << std::setw(10) << c.tolerance << std::fixed << std::setprecision(3) << std::setw(9) << c.wall_time << " s";
    if (c.measured) std::cout << "  measured " << std::setprecision(4) << *c.measured;
    if (c.error) std::cout << "  error: " << *c.error;
    std::cout << "\n";
  }
  std::cout << (r.pass ? "PASS" : "FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs multiform Lagrangian verification scenarios."};
  app.usage("verify <scenario|list> [--config PATH] [--seed U64] [--points N] [--lattice N] [--out PATH] [--json]");
  std::string scenario;
  std::string config_path;
  std::uint64_t seed = 0;
  int points = 0;
  int lattice = 0;
  std::string out;
  std::string export_path;
  bool json = false;
  app.add_option("scenario", scenario, "scenario name, or 'list'")->required();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--points", points, "evaluation points per field");
  app.add_option("--lattice", lattice, "lattice sites per axis");
  app.add_option("--out", out, "write the JSON report here");
  app.add_option("--export", export_path, "lattice-maxwell: write the solved field here");
  app.add_flag("--json", json, "print JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (scenario == "list") {
    print_listing(json);
    return kExitPass;
  }

  verify::ScenarioConfig cfg;
  try {
    if (!config_path.empty()) cfg = verify::load_config(config_path, cfg);
    cfg.scenario = scenario;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--points")) cfg.points = points;
    if (app.count("--lattice")) cfg.lattice = lattice;
    if (app.count("--out")) cfg.out = out;
    cfg.export_path = export_path;
    cfg.validate();
  } catch (const verify::IoError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "verify: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  verify::Report report;
  try {
    report = verify::run_scenario(cfg);
  } catch (const verify::IoError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "verify: scenario aborted: " << e.what() << "\n";
    return kExitFail;
  }

  const std::string payload = report.to_json().dump(2);
  if (json) {
    std::cout << payload << "\n";
  } else {
    print_table(report);
  }
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    f << payload << "\n";
    if (!f) {
      std::cerr << "verify: cannot write report to '" << cfg.out << "'\n";
      return kExitIo;
    }
  }
  return report.pass ? kExitPass : kExitFail;
}
