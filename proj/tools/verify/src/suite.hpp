#pragma once

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "verify/scenarios.hpp"

namespace verify {

/// Collects timed check records, applying tolerance overrides by name.
class Suite {
 public:
  explicit Suite(const ScenarioConfig& cfg) : cfg_(cfg) {}

  /// f returns the max residual; pass iff residual <= tolerance (and finite).
  template <class F>
  void check(const std::string& name, double tolerance, F&& f) {
    CheckRecord r;
    r.name = name;
    r.tolerance = override_for(name, tolerance);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.max_residual = f();
      r.pass = std::isfinite(r.max_residual) && r.max_residual <= r.tolerance;
    } catch (const std::exception& e) {
      r.max_residual = std::numeric_limits<double>::quiet_NaN();
      r.error = e.what();
      r.pass = false;
    }
    r.wall_time = seconds_since(t0);
    records_.push_back(std::move(r));
  }

  /// f returns a measured value; pass iff |value - target| <= half_width.
  template <class F>
  void check_range(const std::string& name, double target, double half_width, F&& f) {
    CheckRecord r;
    r.name = name;
    r.tolerance = override_for(name, half_width);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const double v = f();
      r.measured = v;
      r.max_residual = std::abs(v - target);
      r.pass = std::isfinite(v) && r.max_residual <= r.tolerance;
    } catch (const std::exception& e) {
      r.max_residual = std::numeric_limits<double>::quiet_NaN();
      r.error = e.what();
      r.pass = false;
    }
    r.wall_time = seconds_since(t0);
    records_.push_back(std::move(r));
  }

  const ScenarioConfig& config() const { return cfg_; }
  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  double override_for(const std::string& name, double fallback) const {
    const auto it = cfg_.tolerances.find(name);
    return it == cfg_.tolerances.end() ? fallback : it->second;
  }
  static double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  const ScenarioConfig& cfg_;
  std::vector<CheckRecord> records_;
};

/// Random field pairs per identity suite.
inline constexpr int kFieldCount = 50;

void run_algebra(Suite& s);
void run_identities_flat(Suite& s);
void run_identities_gauge(Suite& s);
void run_derivatives(Suite& s);
void run_maxwell_flat(Suite& s);
void run_dirac_flat(Suite& s);
void run_maxwell_gauge(Suite& s);
void run_dirac_gauge(Suite& s);
void run_lattice_maxwell(Suite& s);

}  // namespace verify
