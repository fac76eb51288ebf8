#include <algorithm>
#include <cmath>

#include "mfl/calculus.hpp"
#include "mfl/gauge.hpp"
#include "mfl/random_fields.hpp"
#include "suite.hpp"

namespace verify {

using namespace mfl;

namespace {

constexpr DelMode kModes[] = {DelMode::gradient, DelMode::divergence, DelMode::curl};

const char* identity_tag(DelMode m) {
  switch (m) {
    case DelMode::gradient:
      return "gradient";
    case DelMode::divergence:
      return "contraction";
    case DelMode::curl:
      return "outer";
  }
  return "?";
}

struct FieldPair {
  FieldExpr x;
  FieldExpr y;
};

std::vector<FieldPair> random_pairs(RandomSource& rng, int count) {
  std::vector<FieldPair> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const GradeSet gx = rng.grade_set();
    const GradeSet gy = rng.grade_set();
    FieldPair p{rng.field(gx), {}};
    p.y = rng.field(gy);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

void run_identities_flat(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  const auto points = rng.points(static_cast<std::size_t>(cfg.points));
  const auto pairs = random_pairs(rng, kFieldCount);

  for (const DelMode m : kModes) {
    s.check(std::string("product-rule-") + identity_tag(m), 1e-8, [&] {
      double r = 0.0;
      for (const auto& p : pairs) r = std::max(r, check_identity_flat(p.x, p.y, m, points));
      return r;
    });
  }
  s.check("del-split", 1e-10, [&] {
    double r = 0.0;
    for (const auto& p : pairs) r = std::max({r, check_del_split(p.x, points), check_del_split(p.y, points)});
    return r;
  });
  s.check("product-rule-position", 1e-10, [&] {
    const auto x = FieldExpr::position();
    double r = 0.0;
    for (const DelMode m : kModes) r = std::max(r, check_identity_flat(x, x, m, points));
    return r;
  });
  s.check("gauss-linear-field", 1e-12, [] {
    const auto g = gauss_check(FieldExpr::position(), Box{}, 4);
    return std::abs(g.volume - 4.0) + std::abs(g.flux - 4.0);
  });
  // Midpoint quadrature of both sides is second order, so halving the cell quarters the gap.
  s.check_range("gauss-convergence-ratio", 4.0, 0.8, [&] {
    const auto v = rng.field(GradeSet{1});
    const auto e8 = gauss_check(v, Box{}, 8);
    const auto e16 = gauss_check(v, Box{}, 16);
    return std::abs(e8.volume - e8.flux) / std::abs(e16.volume - e16.flux);
  });
}

void run_identities_gauge(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  const auto points = rng.points(static_cast<std::size_t>(cfg.points));

  struct Case {
    GaugeBackground bg;
    FieldPair xy;
    FieldExpr psi;
    FieldExpr phi_even;
  };
  std::vector<Case> rotor_cases;
  for (int i = 0; i < kFieldCount; ++i) {
    Case c;
    c.bg = rotor_gauge(rng.rotor_field(), points);
    c.xy.x = rng.field(rng.grade_set());
    c.xy.y = rng.field(rng.grade_set());
    c.psi = rng.field(GradeSet::even());
    c.phi_even = rng.field(GradeSet::even());
    rotor_cases.push_back(std::move(c));
  }

  for (const DelMode m : kModes) {
    s.check(std::string("rotor-omega-") + identity_tag(m), 1e-7, [&] {
      double r = 0.0;
      for (const auto& c : rotor_cases) r = std::max(r, check_identity_gauge(c.xy.x, c.xy.y, m, c.bg, Construction::omega, points));
      return r;
    });
  }
  s.check("rotor-constructions-agree", 1e-7, [&] {
    double r = 0.0;
    for (const auto& c : rotor_cases) r = std::max({r, check_constructions_agree(c.xy.x, c.bg, points), check_constructions_agree(c.xy.y, c.bg, points)});
    return r;
  });
  // With phi even both spinor identities pair odd with even in every term; the mixed-grade run is the informative one.
  s.check("rotor-spinor-commuted-even", 1e-7, [&] {
    double r = 0.0;
    for (const auto& c : rotor_cases) r = std::max(r, check_identity_spinor(c.psi, c.phi_even, c.bg, points).commuted);
    return r;
  });
  s.check("rotor-spinor-divergence-even", 1e-7, [&] {
    double r = 0.0;
    for (const auto& c : rotor_cases) r = std::max(r, check_identity_spinor(c.psi, c.phi_even, c.bg, points).divergence);
    return r;
  });
  s.check("rotor-spinor-commuted-mixed", 1e-7, [&] {
    double r = 0.0;
    for (const auto& c : rotor_cases) r = std::max(r, check_identity_spinor(c.psi, c.xy.y, c.bg, points).commuted);
    return r;
  });
  s.check("rotor-spinor-divergence-mixed", 1e-7, [&] {
    double r = 0.0;
    for (const auto& c : rotor_cases) r = std::max(r, check_identity_spinor(c.psi, c.xy.y, c.bg, points).divergence);
    return r;
  });
  s.check("rotor-spinor-split", 1e-7, [&] {
    double r = 0.0;
    for (const auto& c : rotor_cases) r = std::max(r, check_spinor_split(c.psi, c.bg, points));
    return r;
  });

  // General smooth h: only the pushforward construction is defined without a compatible Omega.
  std::vector<std::pair<GaugeBackground, FieldPair>> general;
  for (int i = 0; i < kFieldCount; ++i) {
    GaugeBackground bg;
    bg.h = rng.smooth_extensor_field();
    FieldPair p{rng.field(rng.grade_set()), {}};
    p.y = rng.field(rng.grade_set());
    general.emplace_back(std::move(bg), std::move(p));
  }
  for (const DelMode m : kModes) {
    s.check(std::string("smooth-pushforward-") + identity_tag(m), 1e-7, [&] {
      double r = 0.0;
      for (const auto& [bg, p] : general) r = std::max(r, check_identity_gauge(p.x, p.y, m, bg, Construction::pushforward, points));
      return r;
    });
  }

  s.check("arbitrary-omega-spinor-commuted", 1e-7, [&] {
    double r = 0.0;
    for (int i = 0; i < kFieldCount; ++i) {
      GaugeBackground bg;
      bg.h = rng.smooth_extensor_field();
      bg.omega = rng.bivector_connection();
      const auto psi = rng.field(GradeSet::even());
      const auto phi = rng.field(rng.grade_set());
      r = std::max(r, check_identity_spinor(psi, phi, bg, points).commuted);
    }
    return r;
  });
}

void run_derivatives(Suite& s) {
  const auto& cfg = s.config();
  RandomSource rng(cfg.seed);
  constexpr int kInstances = 100;

  auto relative = [](const Multivector& got, const Multivector& want) {
    return max_abs(got - want) / std::max(1.0, max_abs(want));
  };
  // Structural and numeric derivatives of the same density, each measured against the closed form.
  auto both = [&](const std::string& rule, auto make) {
    std::vector<std::tuple<ScalarFn, ScalarFn, Multivector, GradeSet, Multivector>> cases;
    for (int i = 0; i < kInstances; ++i) cases.push_back(make());
    s.check(rule + "-numeric", 1e-6, [&] {
      double r = 0.0;
      for (const auto& [fs, fn, x0, g, closed] : cases) r = std::max(r, relative(multivector_derivative(fn, x0, g), closed));
      return r;
    });
    s.check(rule + "-structural", 1e-12, [&] {
      double r = 0.0;
      for (const auto& [fs, fn, x0, g, closed] : cases) r = std::max(r, relative(multivector_derivative(fs, x0, g), closed));
      return r;
    });
  };

  both("rule-square", [&] {
    const GradeSet g = rng.grade_set();
    const auto x0 = rng.multivector(g);
    auto f = [](auto x) { return scalar_product(x[0], x[0]); };
    return std::make_tuple(ScalarFn::from(f, 1), ScalarFn::numeric(f, 1), x0, g, Multivector(x0 * 2.0));
  });
  both("rule-linear", [&] {
    const GradeSet g = rng.grade_set();
    const auto x0 = rng.multivector(g);
    const auto y = rng.multivector();
    auto f = [y](auto x) {
      using T = typename std::decay_t<decltype(x[0])>::scalar_type;
      return scalar_product(x[0], constant_as<T>(y));
    };
    return std::make_tuple(ScalarFn::from(f, 1), ScalarFn::numeric(f, 1), x0, g, grade_restrict(y, g));
  });
  both("rule-sandwich", [&] {
    const GradeSet g = GradeSet::even();
    const auto x0 = rng.multivector(g);
    const auto y = rng.multivector(GradeSet::even());
    const auto z = rng.multivector(GradeSet::even());
    auto f = [y, z](auto x) {
      using T = typename std::decay_t<decltype(x[0])>::scalar_type;
      return scalar_product(constant_as<T>(y) * x[0] * constant_as<T>(z), x[0]);
    };
    const auto closed = grade_restrict(y * x0 * z + reverse(y) * x0 * reverse(z), g);
    return std::make_tuple(ScalarFn::from(f, 1), ScalarFn::numeric(f, 1), x0, g, closed);
  });

  // Richardson central difference along a of every expression-node kind.
  s.check("directional-fd", 1e-6, [&] {
    const auto x = FieldExpr::position();
    const auto u = rng.field(GradeSet::all());
    const auto v = rng.field(rng.grade_set());
    const auto sc = rng.scalar_field();
    const auto t = rng.smooth_extensor_field();
    const std::vector<FieldExpr> fields = {
        FieldExpr::constant(rng.multivector()),
        x,
        FieldExpr::coordinate(rng.vector()),
        u + v,
        2.5 * u,
        u * v,
        outer(u, v),
        left_contraction(u, v),
        scalar_product(u, v),
        commutator(u, v),
        reverse(u),
        grade_project(u, 2),
        grade_restrict(u, GradeSet::odd()),
        sin(sc),
        cos(sc),
        exp(0.3 * sc),
        pow(sc, 3),
        FieldExpr::bivector_exp(gamma(1) * gamma(2), sc),
        FieldExpr::bivector_exp(gamma(0) * gamma(3), sc),
        FieldExpr::apply_extensor(t, u, ExtensorAction::direct),
        FieldExpr::apply_extensor(t, u, ExtensorAction::adjoint),
        FieldExpr::apply_extensor(t, u, ExtensorAction::inverse),
        FieldExpr::apply_extensor(t, u, ExtensorAction::star),
        FieldExpr::directional(u * v, rng.vector()),
        del_expr(u, DelMode::gradient),
    };
    const auto pts = rng.points(10);
    const double step = 1e-3;
    double r = 0.0;
    for (const auto& f : fields) {
      for (const auto& p : pts) {
        const auto a = rng.vector();
        auto central = [&](double h) { return (f(p.shifted(a, h)) - f(p.shifted(a, -h))) / (2.0 * h); };
        const Multivector fd = (4.0 * central(0.5 * step) - central(step)) / 3.0;
        r = std::max(r, relative(directional_derivative(f, a, p), fd));
      }
    }
    return r;
  });
}

}  // namespace verify
