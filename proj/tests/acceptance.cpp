// Acceptance gate: one PASS/FAIL line per criterion. Each criterion names the scenario checks it
// consumes, the tolerance every check must carry, and a wall-time budget over those checks.

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "verify/scenarios.hpp"

namespace {

struct Pinned {
  std::string scenario;
  std::string check;
  double tolerance;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Pinned> checks;
  double budget_seconds;
};

std::vector<Pinned> each(const std::string& scenario, const std::vector<std::string>& names, double tol) {
  std::vector<Pinned> out;
  for (const auto& n : names) out.push_back({scenario, n, tol});
  return out;
}

std::vector<Pinned> join(std::vector<std::vector<Pinned>> parts) {
  std::vector<Pinned> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Criterion> criteria() {
  return {
      {1, "algebra",
       join({each("algebra", {"anticommutation", "contraction-outer-duality"}, 0.0),
             each("algebra", {"associativity"}, 1e-12)}),
       1.0},
      {2, "extensor",
       each("algebra",
            {"extensor-outermorphism", "extensor-contraction-transport", "extensor-det-star",
             "extensor-determinant-routes"},
            1e-9),
       1.0},
      {3, "flat identities",
       join({each("identities-flat", {"product-rule-gradient", "product-rule-contraction", "product-rule-outer"}, 1e-8),
             each("identities-flat", {"del-split"}, 1e-10)}),
       10.0},
      {4, "multivector derivative rules",
       each("derivatives", {"rule-square-numeric", "rule-linear-numeric", "rule-sandwich-numeric"}, 1e-6), 5.0},
      {5, "gauge identities",
       each("identities-gauge",
            {"rotor-omega-gradient", "rotor-omega-contraction", "rotor-omega-outer", "rotor-spinor-commuted-even",
             "rotor-spinor-divergence-even", "smooth-pushforward-gradient", "smooth-pushforward-contraction",
             "smooth-pushforward-outer", "arbitrary-omega-spinor-commuted"},
            1e-7),
       30.0},
      {6, "Euler-Lagrange reproduction",
       join({each("maxwell-flat", {"plane-wave-residual"}, 1e-9),
             each("dirac-flat", {"rest-solution-substitution"}, 1e-10),
             each("dirac-flat", {"rest-solution-residual"}, 1e-8),
             each("maxwell-gauge", {"transported-plane-wave-residual"}, 1e-6),
             each("dirac-gauge", {"transported-residual"}, 1e-6)}),
       10.0},
      {7, "variation decomposition",
       join({each("maxwell-flat", {"decomposition"}, 1e-7), each("dirac-flat", {"decomposition"}, 1e-7),
             each("maxwell-gauge", {"decomposition"}, 1e-7), each("dirac-gauge", {"decomposition"}, 1e-7)}),
       20.0},
      {8, "lattice",
       join({each("lattice-maxwell",
                  {"duality-maxwell-periodic", "duality-dirac-periodic", "duality-maxwell-dirichlet",
                   "duality-dirac-dirichlet"},
                  1e-10),
             each("lattice-maxwell", {"manufactured-solve-error"}, 1e-6),
             each("lattice-maxwell", {"convergence-order"}, 0.2),
             each("lattice-maxwell", {"discrete-gauss-periodic", "discrete-gauss-dirichlet"}, 1e-12)}),
       120.0},
  };
}

}  // namespace

int main() {
  std::map<std::string, verify::Report> reports;
  auto report_for = [&](const std::string& scenario) -> const verify::Report& {
    auto it = reports.find(scenario);
    if (it == reports.end()) {
      verify::ScenarioConfig cfg;
      cfg.scenario = scenario;
      it = reports.emplace(scenario, verify::run_scenario(cfg)).first;
    }
    return it->second;
  };

  bool all = true;
  for (const auto& c : criteria()) {
    bool ok = true;
    double worst_ratio = 0.0;
    double seconds = 0.0;
    std::string why;
    for (const auto& p : c.checks) {
      const auto& rep = report_for(p.scenario);
      const verify::CheckRecord* rec = nullptr;
      for (const auto& r : rep.checks) {
        if (r.name == p.check) rec = &r;
      }
      if (rec == nullptr) {
        ok = false;
        why += " missing:" + p.scenario + "/" + p.check;
        continue;
      }
      seconds += rec->wall_time;
      if (rec->tolerance != p.tolerance) {
        ok = false;
        why += " tolerance-drift:" + p.check;
      }
      if (!rec->pass) {
        ok = false;
        why += " failed:" + p.scenario + "/" + p.check;
      }
      if (p.tolerance > 0.0) worst_ratio = std::max(worst_ratio, rec->max_residual / p.tolerance);
    }
    if (seconds >= c.budget_seconds) {
      ok = false;
      why += " over-budget";
    }
    all = all && ok;
    std::printf("criterion %d %-30s %s  checks=%zu  worst residual/tol=%.3e  time=%.2fs (< %.0fs)%s\n", c.id,
                c.title.c_str(), ok ? "PASS" : "FAIL", c.checks.size(), worst_ratio, seconds, c.budget_seconds,
                why.c_str());
  }
  return all ? 0 : 1;
}
