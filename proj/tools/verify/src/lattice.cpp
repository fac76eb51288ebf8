#include <algorithm>
#include <cmath>
#include <numbers>

#include "mfl/lattice.hpp"
#include "mfl/random_fields.hpp"
#include "suite.hpp"

namespace verify {

using namespace mfl;

namespace {

/// Sum of transverse, non-null Fourier modes on the 2 pi periodic box. Each polarization
/// index is absent from its wavevector, so the field is orthogonal to discrete gradients
/// and constants, the null space of the lattice Maxwell operator.
FieldExpr manufactured_potential() {
  const auto x0 = coordinate_component(0);
  const auto x1 = coordinate_component(1);
  const auto x2 = coordinate_component(2);
  const auto x3 = coordinate_component(3);
  return (FieldExpr::constant(gamma(2)) * cos(x1) + FieldExpr::constant(gamma(3) * 0.5) * sin(x0 + 2.0 * x1) +
          FieldExpr::constant(gamma(1) * 0.3) * cos(x2 - x3) + FieldExpr::constant(gamma(0) * 0.7) * sin(2.0 * x3))
      .with_grades(GradeSet{1});
}

/// Null plane wave with unit-norm polarizations, so residual extrema are comparable across N.
FieldExpr convergence_wave() {
  const double r2 = std::sqrt(2.0);
  const auto phase = FieldExpr::coordinate(gamma(0) * r2 + gamma(1) + gamma(2));
  return (FieldExpr::constant(gamma(3)) * cos(phase) + FieldExpr::constant((gamma(1) - gamma(2)) * (1.0 / r2)) * sin(phase))
      .with_grades(GradeSet{1});
}

double core_residual(int n) {
  const Lattice lat(n, {1.0, 1.0, 1.0, 1.0}, Boundary::dirichlet);
  const auto r = discrete_ele_residual(make_builtin("maxwell_flat"), discretize(convergence_wave(), lat, GradeSet{1}));
  double m = 0.0;
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (lat.in_core(i)) m = std::max(m, norm(r[i]));
  }
  return m;
}

double max_component(const LatticeField& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, max_abs(f[i]));
  return m;
}

}  // namespace

void run_lattice_maxwell(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  const int n = cfg.lattice;

  for (const Boundary bc : {Boundary::periodic, Boundary::dirichlet}) {
    const std::string tag = to_string(bc);
    const Lattice lat(n, {1.0, 1.0, 1.0, 1.0}, bc);
    const auto lm = make_builtin("maxwell_flat", {}, Sources{rng.field(GradeSet{1}), {}});
    const auto f = discretize(rng.field(GradeSet{1}), lat, GradeSet{1});
    s.check("duality-maxwell-" + tag, 1e-10, [&] { return gradient_residual_duality(lm, f); });
    s.check("duality-dirac-" + tag, 1e-10, [&] {
      const auto ld = make_builtin("dirac_flat", {}, Sources{{}, rng.field(GradeSet{1})});
      return gradient_residual_duality(ld, discretize(rng.field(GradeSet::even()), lat, GradeSet::even()));
    });
    // The action is quadratic, so a Richardson central difference in a random direction is exact to rounding.
    s.check("gradient-fd-" + tag, 1e-8, [&] {
      const auto grad = action_gradient(lm, f);
      LatticeField dir(lat, GradeSet{1});
      for (std::size_t i = 0; i < lat.sites(); ++i) {
        if (lat.is_free(i)) dir.set_restricted(i, rng.vector());
      }
      auto shifted = [&](double e) {
        LatticeField g(lat, GradeSet{1});
        for (std::size_t i = 0; i < lat.sites(); ++i) g.set_restricted(i, f[i] + dir[i] * e);
        return discrete_action(lm, g);
      };
      const double fd = (shifted(1e-3) - shifted(-1e-3)) / 2e-3;
      double an = 0.0;
      for (std::size_t i = 0; i < lat.sites(); ++i) an += scalar_product(grad[i], dir[i]);
      return std::abs(fd - an) / std::max(1.0, std::abs(an));
    });
    s.check("discrete-gauss-" + tag, 1e-12, [&] {
      const auto g = discrete_gauss(discretize(rng.field(GradeSet{1}), lat, GradeSet{1}));
      return std::abs(g.volume - g.flux) / std::max(1.0, std::abs(g.volume));
    });
    s.check("fast-operator-" + tag, 1e-10, [&] {
      const auto generic = discrete_ele_residual(make_builtin("maxwell_flat"), f);
      return (generic - maxwell_operator(f)).max_abs_free() / std::max(1.0, generic.max_abs_free());
    });
  }

  const double box = 2.0 * std::numbers::pi;
  const Lattice lat(n, {box, box, box, box}, Boundary::periodic);
  const auto exact = discretize(manufactured_potential(), lat, GradeSet{1});
  const auto j = maxwell_operator(exact);
  std::optional<SolveResult> solved;
  s.check("manufactured-solve-error", 1e-6, [&] {
    solved = solve_maxwell(lat, j);
    return max_component(solved->a - exact) / max_component(exact);
  });
  s.check("manufactured-solve-residual", 1e-8, [&] {
    if (!solved) throw std::runtime_error("solve did not complete");
    return max_component(maxwell_operator(solved->a) - j) / max_component(j);
  });
  s.check("incompatible-source-rejected", 0.0, [&] {
    LatticeField bad(lat, GradeSet{1});
    for (std::size_t i = 0; i < lat.sites(); ++i) bad.set(i, gamma(1));
    try {
      solve_maxwell(lat, bad);
    } catch (const SolverError&) {
      return 0.0;
    }
    return 1.0;
  });
  s.check_range("convergence-order", 2.0, 0.2, [] { return std::log2(core_residual(6) / core_residual(12)); });

  if (!cfg.export_path.empty() && solved) {
    try {
      export_field(solved->a, cfg.export_path);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  }
}

}  // namespace verify
