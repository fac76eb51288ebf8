#include <algorithm>
#include <cmath>

#include "mfl/lagrangian.hpp"
#include "mfl/random_fields.hpp"
#include "suite.hpp"

namespace verify {

using namespace mfl;

namespace {

// Rotor backgrounds per gauge scenario; every one is checked at all configured points.
constexpr int kBackgrounds = 10;

PhysicalParams dirac_params() {
  PhysicalParams p;
  p.m = 1.3;
  p.hbar = 0.7;
  p.c = 1.1;
  p.e = 0.8;
  return p;
}

PhysicalParams maxwell_params() {
  PhysicalParams p;
  p.mu0 = 1.7;
  return p;
}

/// A = a cos(k.x) + b sin(k.x) with k null, a and b orthogonal to k.
FieldExpr plane_wave(const Multivector& k, const Multivector& a, const Multivector& b) {
  const auto phase = FieldExpr::coordinate(k);
  return (FieldExpr::constant(a) * cos(phase) + FieldExpr::constant(b) * sin(phase)).with_grades(GradeSet{1});
}

std::vector<FieldExpr> plane_waves() {
  const double r2 = std::sqrt(2.0);
  return {
      plane_wave(gamma(0) + gamma(1), gamma(2), Multivector()),
      plane_wave(gamma(0) * r2 + gamma(1) + gamma(2), gamma(3), (gamma(1) - gamma(2)) * (1.0 / r2)),
      plane_wave((gamma(0) * 3.0 + gamma(3) * 3.0) * 0.5, gamma(1) * 0.4, gamma(2) * 0.9),
  };
}

/// Free Dirac-Hestenes plane wave at rest: exp(gamma_1 gamma_2 (mc/hbar) x^0).
FieldExpr dirac_rest_solution(const PhysicalParams& p) {
  const double w = p.m * p.c / p.hbar;
  return FieldExpr::bivector_exp(gamma(1) * gamma(2), w * coordinate_component(0)).with_grades(GradeSet::even());
}

/// hbar (D psi) i sigma3 - mc psi gamma0 for a precomputed derivative D psi.
Multivector dirac_substitution(const Multivector& dpsi, const Multivector& psi, const PhysicalParams& p) {
  return dpsi * (pseudoscalar() * sigma3()) * p.hbar - psi * gamma(0) * (p.m * p.c);
}

double max_residual(const LagrangianSpec& L, const FieldExpr& x, std::span<const PositionForm> pts,
                    const GaugeBackground& bg = GaugeBackground::flat()) {
  return ele_report(L, x, pts, bg).max;
}

/// Max decomposition residual over kFieldCount random (X, A) pairs of the given grades.
double decomposition_sweep(RandomSource& rng, std::string_view builtin, const PhysicalParams& params, GradeSet g,
                           std::span<const PositionForm> pts, bool gauge) {
  double r = 0.0;
  for (int i = 0; i < kFieldCount; ++i) {
    const Sources src{rng.field(GradeSet{1}), rng.field(GradeSet{1})};
    const auto L = make_builtin(builtin, params, src);
    const auto x = rng.field(g);
    const auto a = rng.field(g);
    const GaugeBackground bg = gauge ? rotor_gauge(rng.rotor_field(), pts) : GaugeBackground::flat();
    for (const auto& p : pts) r = std::max(r, decomposition_check(L, x, a, p, bg));
  }
  return r;
}

/// Max over points of the largest component outside grades(X).
double grade_leak(const LagrangianSpec& L, const FieldExpr& x, std::span<const PositionForm> pts,
                  const GaugeBackground& bg = GaugeBackground::flat()) {
  double r = 0.0;
  for (const auto& p : pts) {
    const auto res = ele_residual(L, x, p, bg);
    r = std::max(r, max_abs(res - grade_restrict(res, x.grades())));
  }
  return r;
}

/// A density scaled by c scales the residual by c.
double scaling_covariance(const LagrangianSpec& L, const FieldExpr& x, std::span<const PositionForm> pts,
                          const GaugeBackground& bg = GaugeBackground::flat()) {
  constexpr double c = 2.5;
  LagrangianSpec scaled = L;
  const ScalarFn base = L.density;
  scaled.density = ScalarFn::from([base](auto s) { return base(s) * c; }, base.arity());
  double r = 0.0;
  for (const auto& p : pts) {
    const auto want = ele_residual(L, x, p, bg) * c;
    r = std::max(r, max_abs(ele_residual(scaled, x, p, bg) - want) / std::max(1.0, max_abs(want)));
  }
  return r;
}

}  // namespace

void run_maxwell_flat(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  const auto pts = rng.points(static_cast<std::size_t>(cfg.points));
  const PhysicalParams params = maxwell_params();
  const auto L0 = make_builtin("maxwell_flat", params);

  s.check("plane-wave-residual", 1e-9, [&] {
    double r = 0.0;
    for (const auto& a : plane_waves()) r = std::max(r, max_residual(L0, a, pts));
    return r;
  });
  // (k^a).(k^a) = (k.k)(a.a) - (k.a)^2 = 0 for null k orthogonal to a.
  s.check("plane-wave-density", 1e-12, [&] {
    double r = 0.0;
    for (const auto& a : plane_waves()) {
      for (const auto& p : pts) r = std::max(r, std::abs(density(L0, a, p)));
    }
    return r;
  });
  // A = gamma_2 (x^0)^2: del^A = 2 x^0 gamma^0 ^ gamma_2 and del_|(del^A) = 2 gamma_2.
  s.check("nonsolution-closed-form", 1e-9, [&] {
    const auto a = (FieldExpr::constant(gamma(2)) * pow(coordinate_component(0), 2)).with_grades(GradeSet{1});
    double r = 0.0;
    for (const auto& p : pts) r = std::max(r, max_abs(ele_residual(L0, a, p) - gamma(2) * (2.0 / params.mu0)));
    return r;
  });
  // Residual + J = mu0^-1 del_|(del^A), with the operator composed from expression-level derivatives.
  s.check("random-field-nested-operator", 1e-9, [&] {
    double r = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto j = rng.field(GradeSet{1});
      const auto L = make_builtin("maxwell_flat", params, Sources{j, {}});
      const auto a = rng.field(GradeSet{1});
      const auto op = del_expr(del_expr(a, DelMode::curl), DelMode::divergence);
      for (const auto& p : pts) {
        const auto want = op(p) * (1.0 / params.mu0) - j(p);
        r = std::max(r, max_abs(ele_residual(L, a, p) - want) / std::max(1.0, max_abs(want)));
      }
    }
    return r;
  });
  s.check("variation-lambda-fd", 1e-8, [&] {
    const auto L = make_builtin("maxwell_flat", params, Sources{rng.field(GradeSet{1}), {}});
    const auto x = rng.field(GradeSet{1});
    const auto a = (FieldExpr::constant(gamma(2)) * cos(coordinate_component(0))).with_grades(GradeSet{1});
    double r = 0.0;
    for (const auto& p : pts) {
      auto central = [&](double h) { return (density(L, x + h * a, p) - density(L, x - h * a, p)) / (2.0 * h); };
      const double fd = (4.0 * central(5e-4) - central(1e-3)) / 3.0;
      const double v = variation(L, x, a, p);
      r = std::max(r, std::abs(v - fd) / std::max(1.0, std::abs(fd)));
    }
    return r;
  });
  s.check("grade-restriction", 0.0, [&] { return grade_leak(L0, rng.field(GradeSet{1}), pts); });
  s.check("scaling-covariance", 1e-12, [&] { return scaling_covariance(L0, rng.field(GradeSet{1}), pts); });
  s.check("decomposition", 1e-7, [&] { return decomposition_sweep(rng, "maxwell_flat", params, GradeSet{1}, pts, false); });
}

void run_dirac_flat(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  const auto pts = rng.points(static_cast<std::size_t>(cfg.points));
  const PhysicalParams params = dirac_params();
  const auto L0 = make_builtin("dirac_flat", params);
  const auto psi = dirac_rest_solution(params);

  // The candidate must satisfy the field equation on its own before the residual is trusted.
  s.check("rest-solution-substitution", 1e-10, [&] {
    double r = 0.0;
    for (const auto& p : pts) r = std::max(r, max_abs(dirac_substitution(del(psi, DelMode::gradient, p), psi(p), params)));
    return r;
  });
  s.check("rest-solution-residual", 1e-8, [&] { return max_residual(L0, psi, pts); });
  s.check("unit-spinor-density", 1e-12, [&] {
    return std::abs(density(L0, FieldExpr::constant(1.0).with_grades(GradeSet::even()), pts.front()) + params.m * params.c);
  });
  // A non-solution must register: a boosted phase with the wrong frequency.
  s.check_range("wrong-frequency-detected", 1.0, 0.0, [&] {
    const auto bad = FieldExpr::bivector_exp(gamma(1) * gamma(2), 2.0 * coordinate_component(0)).with_grades(GradeSet::even());
    return max_residual(L0, bad, pts) > 1e-3 ? 1.0 : 0.0;
  });
  s.check("grade-restriction", 0.0, [&] { return grade_leak(L0, rng.field(GradeSet::even()), pts); });
  s.check("scaling-covariance", 1e-12, [&] { return scaling_covariance(L0, rng.field(GradeSet::even()), pts); });
  s.check("decomposition", 1e-7, [&] { return decomposition_sweep(rng, "dirac_flat", params, GradeSet::even(), pts, false); });
}

void run_maxwell_gauge(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  const auto pts = rng.points(static_cast<std::size_t>(cfg.points));
  const PhysicalParams params = maxwell_params();
  const auto L0 = make_builtin("maxwell_gauge", params);
  std::vector<GaugeBackground> bgs;
  for (int i = 0; i < kBackgrounds; ++i) bgs.push_back(rotor_gauge(rng.rotor_field(), pts));

  // For a rotor h, D^h(A) = h(del^A) and D_|h(F) = h(del_|F), so h maps flat solutions to gauge solutions.
  s.check("transported-plane-wave-residual", 1e-6, [&] {
    double r = 0.0;
    for (const auto& bg : bgs) {
      for (const auto& a : plane_waves()) r = std::max(r, max_residual(L0, FieldExpr::apply_extensor(bg.h, a), pts, bg));
    }
    return r;
  });
  // D^ by the pushforward formula as an expression, D_| by the omega construction.
  s.check("transported-nested-operator", 1e-9, [&] {
    double r = 0.0;
    for (const auto& bg : bgs) {
      const auto a = FieldExpr::apply_extensor(bg.h, plane_waves()[1]);
      const auto f = FieldExpr::apply_extensor(
          bg.h, del_expr(FieldExpr::apply_extensor(bg.h, a, ExtensorAction::adjoint), DelMode::curl), ExtensorAction::star);
      for (const auto& p : pts) r = std::max(r, max_abs(gauge_del(f, DelMode::divergence, p, bg, Construction::omega)));
    }
    return r;
  });
  s.check("random-field-two-paths", 1e-8, [&] {
    double r = 0.0;
    for (const auto& bg : bgs) {
      const auto j = rng.field(GradeSet{1});
      const auto L = make_builtin("maxwell_gauge", params, Sources{j, {}});
      const auto a = rng.field(GradeSet{1});
      const auto f = FieldExpr::apply_extensor(
          bg.h, del_expr(FieldExpr::apply_extensor(bg.h, a, ExtensorAction::adjoint), DelMode::curl), ExtensorAction::star);
      for (const auto& p : pts) {
        const auto want = gauge_del(f, DelMode::divergence, p, bg, Construction::omega) * (1.0 / params.mu0) - j(p);
        r = std::max(r, max_abs(ele_residual(L, a, p, bg) - want) / std::max(1.0, max_abs(want)));
      }
    }
    return r;
  });
  s.check("flat-limit", 1e-10, [&] {
    const auto j = rng.field(GradeSet{1});
    const auto lg = make_builtin("maxwell_gauge", params, Sources{j, {}});
    const auto lf = make_builtin("maxwell_flat", params, Sources{j, {}});
    const auto a = rng.field(GradeSet{1});
    double r = 0.0;
    for (const auto& p : pts) r = std::max(r, max_abs(ele_residual(lg, a, p, GaugeBackground::flat()) - ele_residual(lf, a, p)));
    return r;
  });
  s.check("grade-restriction", 0.0, [&] { return grade_leak(L0, rng.field(GradeSet{1}), pts, bgs.front()); });
  s.check("decomposition", 1e-7, [&] { return decomposition_sweep(rng, "maxwell_gauge", params, GradeSet{1}, pts, true); });
}

void run_dirac_gauge(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  const auto pts = rng.points(static_cast<std::size_t>(cfg.points));
  const PhysicalParams params = dirac_params();
  const auto L0 = make_builtin("dirac_gauge", params);
  const auto psi_flat = dirac_rest_solution(params);
  std::vector<std::pair<FieldExpr, GaugeBackground>> cases;
  for (int i = 0; i < kBackgrounds; ++i) {
    const auto rotor = rng.rotor_field();
    cases.emplace_back((rotor * psi_flat).with_grades(GradeSet::even()), rotor_gauge(rotor, pts));
  }

  s.check("transported-substitution", 1e-10, [&] {
    double r = 0.0;
    for (const auto& [psi, bg] : cases) {
      for (const auto& p : pts) r = std::max(r, max_abs(dirac_substitution(spinor_del(psi, p, bg), psi(p), params)));
    }
    return r;
  });
  s.check("transported-residual", 1e-6, [&] {
    double r = 0.0;
    for (const auto& [psi, bg] : cases) r = std::max(r, max_residual(L0, psi, pts, bg));
    return r;
  });
  s.check("flat-limit", 1e-10, [&] {
    const Sources src{{}, rng.field(GradeSet{1})};
    const auto lg = make_builtin("dirac_gauge", params, src);
    const auto lf = make_builtin("dirac_flat", params, src);
    const auto psi = rng.field(GradeSet::even());
    double r = 0.0;
    for (const auto& p : pts) r = std::max(r, max_abs(ele_residual(lg, psi, p, GaugeBackground::flat()) - ele_residual(lf, psi, p)));
    return r;
  });
  s.check("grade-restriction", 0.0, [&] { return grade_leak(L0, rng.field(GradeSet::even()), pts, cases.front().second); });
  s.check("decomposition", 1e-7, [&] { return decomposition_sweep(rng, "dirac_gauge", params, GradeSet::even(), pts, true); });
}

}  // namespace verify
