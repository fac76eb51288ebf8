#include <gtest/gtest.h>

#include <limits>

#include "mfl/lagrangian.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace mfl;

namespace {

const Multivector kIGamma3 = pseudoscalar() * gamma(3);

PhysicalParams odd_params() {
  PhysicalParams p;
  p.mu0 = 1.7;
  p.e = 0.8;
  p.m = 1.3;
  p.c = 1.1;
  p.hbar = 0.7;
  return p;
}

FieldExpr plane_wave() {
  return (FieldExpr::constant(gamma(2)) * cos(FieldExpr::coordinate(gamma(0) + gamma(1)))).with_grades(GradeSet{1});
}

FieldExpr dirac_rest(const PhysicalParams& p) {
  return FieldExpr::bivector_exp(gamma(1) * gamma(2), (p.m * p.c / p.hbar) * coordinate_component(0)).with_grades(GradeSet::even());
}

FieldExpr test_rotor(gen::Gen& g) {
  const auto phi1 = 0.4 * FieldExpr::coordinate(g.vector()) + 0.2 * cos(FieldExpr::coordinate(g.vector()));
  const auto phi2 = 0.3 * FieldExpr::coordinate(g.vector());
  return (FieldExpr::bivector_exp(gamma(2) * gamma(3), phi1) * FieldExpr::bivector_exp(gamma(0) * gamma(1), phi2))
      .with_grades(GradeSet::even());
}

LagrangianSpec quadratic_spec() {
  LagrangianSpec l;
  l.name = "square";
  l.mode = DerivativeMode::flat_outer;
  l.density = ScalarFn::from([](auto s) { return scalar_product(s[0], s[0]); }, 4);
  return l;
}

}  // namespace

TEST(Params, Validation) {
  EXPECT_NO_THROW(PhysicalParams{}.validate());
  for (auto mutate : std::vector<std::function<void(PhysicalParams&)>>{
           [](PhysicalParams& p) { p.mu0 = 0.0; }, [](PhysicalParams& p) { p.c = -1.0; },
           [](PhysicalParams& p) { p.hbar = 0.0; }, [](PhysicalParams& p) { p.m = -0.1; },
           [](PhysicalParams& p) { p.e = std::numeric_limits<double>::quiet_NaN(); }}) {
    PhysicalParams p;
    mutate(p);
    EXPECT_THROW(p.validate(), InvalidParameterError);
    EXPECT_THROW((void)make_builtin("maxwell_flat", p), InvalidParameterError);
  }
  PhysicalParams massless;
  massless.m = 0.0;
  EXPECT_NO_THROW(massless.validate());
  EXPECT_THROW((void)make_builtin("proca_flat"), InvalidParameterError);
}

TEST(Builtins, ModesAndWeights) {
  EXPECT_EQ(make_builtin("maxwell_flat").mode, DerivativeMode::flat_outer);
  EXPECT_EQ(make_builtin("dirac_flat").mode, DerivativeMode::flat_clifford);
  EXPECT_EQ(make_builtin("maxwell_gauge").mode, DerivativeMode::gauge_outer);
  EXPECT_EQ(make_builtin("dirac_gauge").mode, DerivativeMode::spinor);
  EXPECT_EQ(make_builtin("maxwell_flat").weight, Weight::unit);
  EXPECT_EQ(make_builtin("dirac_gauge").weight, Weight::det_h);
  EXPECT_EQ(family(DerivativeMode::gauge_contraction), ModeFamily::gauge);
  EXPECT_EQ(del_mode(DerivativeMode::spinor), DelMode::gradient);
  EXPECT_EQ(del_mode(DerivativeMode::flat_contraction), DelMode::divergence);
}

TEST(Density, Examples) {
  const auto p = odd_params();
  gen::Gen g(81);
  const auto pt = g.point();
  EXPECT_EQ(density(make_builtin("maxwell_flat", p), FieldExpr().with_grades(GradeSet{1}), pt), 0.0);
  EXPECT_NEAR(density(make_builtin("maxwell_flat", p), plane_wave(), pt), 0.0, 1e-15);
  EXPECT_NEAR(density(make_builtin("dirac_flat", p), FieldExpr::constant(1.0).with_grades(GradeSet::even()), pt), -p.m * p.c, 1e-15);
}

TEST(SlotDerivatives, MaxwellDensity) {
  // d_A(-A.J) = -J and d_F(-(1/2mu0) F.F) = -F/mu0.
  const auto p = odd_params();
  const auto l = make_builtin("maxwell_flat", p);
  gen::Gen g(82);
  const std::array<Multivector, 4> at{g.vector(), g.multivector(GradeSet{2}), g.vector(), g.vector()};
  EXPECT_LE(max_abs(slot_derivative<double, 4>(l.density, at, 0, GradeSet{1}) + at[2]), 1e-15);
  EXPECT_LE(max_abs(slot_derivative<double, 4>(l.density, at, 1, GradeSet{2}) + at[1] * (1.0 / p.mu0)), 1e-15);
}

TEST(SlotDerivatives, DiracDensityClosedForms) {
  // d_psi l = hbar d i gamma3 - 2e A psi gamma0 - 2mc psi and d_d l = -hbar psi i gamma3.
  const auto p = odd_params();
  const auto l = make_builtin("dirac_flat", p);
  gen::Gen g(83);
  for (int i = 0; i < 20; ++i) {
    const auto psi = g.multivector(GradeSet::even());
    const auto d = g.multivector(GradeSet::odd());
    const auto a = g.vector();
    const std::array<Multivector, 4> at{psi, d, Multivector(), a};
    const auto want0 = d * kIGamma3 * p.hbar - a * psi * gamma(0) * (2.0 * p.e) - psi * (2.0 * p.m * p.c);
    const auto want1 = psi * kIGamma3 * -p.hbar;
    EXPECT_LE(max_abs(slot_derivative<double, 4>(l.density, at, 0, GradeSet::even()) - grade_restrict(want0, GradeSet::even())), 1e-14);
    EXPECT_LE(max_abs(slot_derivative<double, 4>(l.density, at, 1, GradeSet::odd()) - want1), 1e-14);
  }
}

TEST(Variation, Examples) {
  gen::Gen g(84);
  const auto x = g.field(GradeSet{1});
  const auto a = g.field(GradeSet{1});
  const auto pt = g.point();
  const auto l = make_builtin("maxwell_flat", odd_params(), Sources{g.field(GradeSet{1}), {}});
  EXPECT_EQ(variation(l, x, FieldExpr().with_grades(GradeSet{1}), pt), 0.0);
  EXPECT_NEAR(variation(quadratic_spec(), x, a, pt), 2.0 * scalar_product(x(pt), a(pt)), 1e-14);
  EXPECT_THROW((void)variation(l, x, g.field(GradeSet{1, 2}), pt), GradeError);
}

TEST(Variation, MatchesLambdaFiniteDifference) {
  gen::Gen g(85);
  const auto l = make_builtin("maxwell_flat", odd_params(), Sources{g.field(GradeSet{1}), {}});
  const auto x = g.field(GradeSet{1});
  const auto a = (FieldExpr::constant(gamma(2)) * cos(coordinate_component(0))).with_grades(GradeSet{1});
  for (const auto& pt : g.points(20)) {
    const double fd = oracle::derivative([&](double h) { return density(l, x + h * a, pt); }, 1e-3);
    EXPECT_NEAR(variation(l, x, a, pt), fd, 1e-8 * std::max(1.0, std::abs(fd)));
  }
}

TEST(FlatResidual, PlaneWaveIsASolution) {
  gen::Gen g(86);
  const auto pts = g.points(50);
  EXPECT_LE(ele_report(make_builtin("maxwell_flat", odd_params()), plane_wave(), pts).max, 1e-9);
}

TEST(FlatResidual, QuadraticPotentialClosedForm) {
  const auto p = odd_params();
  const auto a = (FieldExpr::constant(gamma(2)) * pow(coordinate_component(0), 2)).with_grades(GradeSet{1});
  gen::Gen g(87);
  for (const auto& pt : g.points(10)) EXPECT_LE(max_abs(ele_residual_flat(make_builtin("maxwell_flat", p), a, pt) - gamma(2) * (2.0 / p.mu0)), 1e-13);
}

TEST(FlatResidual, MaxwellResidualPlusSourceIsDoubleCurl) {
  const auto p = odd_params();
  gen::Gen g(88);
  const auto j = g.field(GradeSet{1});
  const auto l = make_builtin("maxwell_flat", p, Sources{j, {}});
  const auto a = g.field(GradeSet{1});
  for (const auto& pt : g.points(20)) {
    // del_|(del^A) assembled from finite differences of the exact curl.
    const auto curl = del_expr(a, DelMode::curl);
    Multivector dd;
    for (int mu = 0; mu < 4; ++mu) {
      const auto dmu = oracle::derivative([&](double h) { return curl(pt.shifted(gamma(mu), h)); }, 1e-3);
      dd += left_contraction(gamma_up(mu), dmu);
    }
    EXPECT_LE(max_abs(ele_residual_flat(l, a, pt) + j(pt) - dd * (1.0 / p.mu0)), 1e-8);
  }
}

TEST(FlatResidual, DiracRestSolution) {
  const auto p = odd_params();
  const auto psi = dirac_rest(p);
  gen::Gen g(89);
  const auto pts = g.points(50);
  for (const auto& pt : pts) {
    const auto sub = del(psi, DelMode::gradient, pt) * (pseudoscalar() * sigma3()) * p.hbar - psi(pt) * gamma(0) * (p.m * p.c);
    EXPECT_LE(max_abs(sub), 1e-12);
  }
  EXPECT_LE(ele_report(make_builtin("dirac_flat", p), psi, pts).max, 1e-8);
}

TEST(FlatResidual, ModeAndGradeErrors) {
  gen::Gen g(90);
  const auto pt = g.point();
  const auto a = g.field(GradeSet{1});
  EXPECT_THROW((void)ele_residual_flat(make_builtin("maxwell_gauge"), a, pt), ModeMismatchError);
  EXPECT_THROW((void)ele_residual_gauge(make_builtin("maxwell_flat"), a, pt, GaugeBackground::flat()), ModeMismatchError);
  EXPECT_THROW((void)ele_residual_spinor(make_builtin("maxwell_gauge"), a, pt, GaugeBackground::flat()), ModeMismatchError);
  EXPECT_THROW((void)ele_residual_spinor(make_builtin("dirac_gauge"), a, pt, GaugeBackground::flat()), GradeError);
}

TEST(FlatResidual, GradeRestrictedAndScaleCovariant) {
  gen::Gen g(91);
  const auto l = make_builtin("dirac_flat", odd_params(), Sources{{}, g.field(GradeSet{1})});
  LagrangianSpec scaled = l;
  scaled.density = ScalarFn::from([base = l.density](auto s) { return base(s) * -3.0; }, 4);
  const auto psi = g.field(GradeSet::even());
  for (const auto& pt : g.points(10)) {
    const auto r = ele_residual(l, psi, pt);
    EXPECT_EQ(grade_restrict(r, GradeSet::even()), r);
    EXPECT_LE(max_abs(ele_residual(scaled, psi, pt) - r * -3.0), 1e-12 * std::max(1.0, max_abs(r)));
  }
}

TEST(GaugeResidual, FlatLimitMatchesFlat) {
  const auto p = odd_params();
  gen::Gen g(92);
  const Sources src{g.field(GradeSet{1}), g.field(GradeSet{1})};
  const auto a = g.field(GradeSet{1});
  const auto psi = g.field(GradeSet::even());
  for (const auto& pt : g.points(10)) {
    EXPECT_LE(max_abs(ele_residual(make_builtin("maxwell_gauge", p, src), a, pt) - ele_residual(make_builtin("maxwell_flat", p, src), a, pt)), 1e-10);
    EXPECT_LE(max_abs(ele_residual(make_builtin("dirac_gauge", p, src), psi, pt) - ele_residual(make_builtin("dirac_flat", p, src), psi, pt)), 1e-10);
  }
}

TEST(GaugeResidual, TransportedSolutionsOnRotorBackground) {
  const auto p = odd_params();
  gen::Gen g(93);
  const auto pts = g.points(30);
  const auto rotor = test_rotor(g);
  const auto bg = rotor_gauge(rotor, pts);
  EXPECT_LE(ele_report(make_builtin("maxwell_gauge", p), FieldExpr::apply_extensor(bg.h, plane_wave()), pts, bg).max, 1e-6);
  EXPECT_LE(ele_report(make_builtin("dirac_gauge", p), (rotor * dirac_rest(p)).with_grades(GradeSet::even()), pts, bg).max, 1e-6);
}

TEST(SpinorResidual, ConstantSpinorConstantConnection) {
  // m = 0, A = 0, psi constant: residual = hbar <sum_mu gamma^mu Omega_mu psi i gamma3>_even.
  PhysicalParams p = odd_params();
  p.m = 0.0;
  const auto l = make_builtin("dirac_gauge", p);
  gen::Gen g(94);
  GaugeBackground bg;
  std::array<Multivector, 4> om;
  for (int mu = 0; mu < 4; ++mu) {
    om[static_cast<std::size_t>(mu)] = g.multivector(GradeSet{2});
    bg.omega[static_cast<std::size_t>(mu)] = FieldExpr::constant(om[static_cast<std::size_t>(mu)]);
  }
  const auto c = g.multivector(GradeSet::even());
  Multivector sum;
  for (int mu = 0; mu < 4; ++mu) sum += gamma_up(mu) * om[static_cast<std::size_t>(mu)];
  const auto want = grade_restrict(sum * c * kIGamma3 * p.hbar, GradeSet::even());
  const auto pt = g.point();
  EXPECT_LE(max_abs(ele_residual_spinor(l, FieldExpr::constant(c).with_grades(GradeSet::even()), pt, bg) - want), 1e-13);
}

TEST(Decomposition, ZeroVariation) {
  gen::Gen g(95);
  const auto x = g.field(GradeSet{1});
  EXPECT_EQ(decomposition_check(make_builtin("maxwell_flat"), x, FieldExpr().with_grades(GradeSet{1}), g.point()), 0.0);
}

TEST(Decomposition, AllBuiltins) {
  const auto p = odd_params();
  gen::Gen g(96);
  const auto pts = g.points(10);
  const auto bg = rotor_gauge(test_rotor(g), pts);
  for (int i = 0; i < 10; ++i) {
    const Sources src{g.field(GradeSet{1}), g.field(GradeSet{1})};
    const auto x = g.field(GradeSet{1});
    const auto a = g.field(GradeSet{1});
    const auto psi = g.field(GradeSet::even());
    const auto eta = g.field(GradeSet::even());
    for (const auto& pt : pts) {
      EXPECT_LE(decomposition_check(make_builtin("maxwell_flat", p, src), x, a, pt), 1e-8);
      EXPECT_LE(decomposition_check(make_builtin("dirac_flat", p, src), psi, eta, pt), 1e-7);
      EXPECT_LE(decomposition_check(make_builtin("maxwell_gauge", p, src), x, a, pt, bg), 1e-7);
      EXPECT_LE(decomposition_check(make_builtin("dirac_gauge", p, src), psi, eta, pt, bg), 1e-7);
    }
  }
}

TEST(Decomposition, NonUnimodularBackgroundKeepsWeight) {
  // A constant non-orthogonal h on the pushforward construction exercises the det(h) weight.
  const auto p = odd_params();
  gen::Gen g(97);
  GaugeBackground bg;
  bg.h = ExtensorField::constant(g.extensor());
  auto l = make_builtin("maxwell_gauge", p, Sources{g.field(GradeSet{1}), {}});
  l.construction = Construction::pushforward;
  const auto x = g.field(GradeSet{1});
  const auto a = g.field(GradeSet{1});
  for (const auto& pt : g.points(10)) EXPECT_LE(decomposition_check(l, x, a, pt, bg), 1e-8);
}

TEST(Report, SummaryStatistics) {
  gen::Gen g(98);
  const auto pts = g.points(15);
  const auto l = make_builtin("maxwell_flat");
  const auto x = g.field(GradeSet{1});
  const auto without = ele_report(l, x, pts);
  EXPECT_EQ(without.norms.size(), pts.size());
  EXPECT_EQ(without.decomposition, -1.0);
  EXPECT_GE(without.max, without.mean);
  for (double n : without.norms) EXPECT_GE(n, 0.0);
  const auto a = g.field(GradeSet{1});
  const auto with = ele_report(l, x, pts, GaugeBackground::flat(), &a);
  EXPECT_GE(with.decomposition, 0.0);
  EXPECT_LE(with.decomposition, 1e-8);
}
