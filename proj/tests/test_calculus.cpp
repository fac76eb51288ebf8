#include <gtest/gtest.h>

#include "mfl/calculus.hpp"
#include "mfl/scalar_fn.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace mfl;

namespace {

PositionForm at(double x0, double x1, double x2, double x3) { return PositionForm{{x0, x1, x2, x3}}; }

Multivector fd_directional(const FieldExpr& f, const Multivector& a, const PositionForm& p) {
  return oracle::derivative([&](double h) { return f(p.shifted(a, h)); }, 1e-3);
}

double rel(const Multivector& got, const Multivector& want) { return max_abs(got - want) / std::max(1.0, max_abs(want)); }

}  // namespace

TEST(Directional, PositionFieldGivesDirection) {
  gen::Gen g(41);
  const auto a = g.vector();
  EXPECT_LE(max_abs(directional_derivative(FieldExpr::position(), a, g.point()) - a), 1e-15);
}

TEST(Directional, SquaredCoordinate) {
  const auto f = pow(FieldExpr::coordinate(gamma(0)), 2);
  EXPECT_EQ(directional_derivative(f, gamma(0), at(0, 0, 0, 0)), Multivector());
  EXPECT_NEAR(directional_derivative(f, gamma(0), at(1, 0, 0, 0)).scalar(), 2.0, 1e-15);
}

TEST(Directional, MatchesFiniteDifferenceOnRandomFields) {
  gen::Gen g(42);
  for (int i = 0; i < 30; ++i) {
    const auto f = g.field(g.grades()) * g.field(g.grades());
    const auto p = g.point();
    const auto a = g.vector();
    EXPECT_LE(rel(directional_derivative(f, a, p), fd_directional(f, a, p)), 1e-6);
  }
}

TEST(Directional, NestingBeyondJetDepthThrows) {
  const auto x = FieldExpr::position();
  const auto once = FieldExpr::directional(x * x, gamma(1));
  const auto twice = FieldExpr::directional(once, gamma(2));
  EXPECT_NO_THROW((void)directional_derivative(twice, gamma(0), at(0.1, 0.2, 0.3, 0.4)));
  const auto thrice = FieldExpr::directional(twice, gamma(3));
  EXPECT_THROW((void)directional_derivative(thrice, gamma(0), at(0.1, 0.2, 0.3, 0.4)), std::domain_error);
}

TEST(Del, PositionField) {
  const auto x = FieldExpr::position();
  const auto p = at(0.3, -0.2, 0.5, 0.1);
  EXPECT_LE(max_abs(del(x, DelMode::gradient, p) - Multivector(4.0)), 1e-15);
  EXPECT_LE(max_abs(del(x, DelMode::divergence, p) - Multivector(4.0)), 1e-15);
  EXPECT_LE(max_abs(del(x, DelMode::curl, p)), 1e-15);
}

TEST(Del, GradientOfCoordinateIsTheCovector) {
  gen::Gen g(43);
  const auto k = g.vector();
  EXPECT_LE(max_abs(del(FieldExpr::coordinate(k), DelMode::gradient, g.point()) - k), 1e-15);
}

TEST(Del, SplitIntoDivergenceAndCurl) {
  gen::Gen g(44);
  const auto pts = g.points(10);
  for (int i = 0; i < 100; ++i) EXPECT_LE(check_del_split(g.field(g.grades()), std::span(pts).first(1 + i % 10)), 1e-10);
}

TEST(Del, ExpressionMatchesPointwiseOperator) {
  gen::Gen g(45);
  const auto f = g.field(GradeSet::all());
  for (const auto mode : {DelMode::gradient, DelMode::divergence, DelMode::curl}) {
    const auto p = g.point();
    EXPECT_LE(max_abs(del_expr(f, mode)(p) - del(f, mode, p)), 1e-14);
    EXPECT_TRUE(del_expr(f, mode).grades() == del_grades(f.grades(), mode));
  }
}

TEST(MultivectorDerivative, SquareRule) {
  const auto f = ScalarFn::from([](auto x) { return scalar_product(x[0], x[0]); }, 1);
  EXPECT_LE(max_abs(multivector_derivative(f, gamma(0) * 3.0, GradeSet{1}) - gamma(0) * 6.0), 1e-15);
}

TEST(MultivectorDerivative, LinearRule) {
  const Multivector y = gamma(0) + Multivector::blade(0b0011);
  const auto f = ScalarFn::from(
      [y](auto x) {
        using T = typename std::decay_t<decltype(x[0])>::scalar_type;
        return scalar_product(x[0], constant_as<T>(y));
      },
      1);
  EXPECT_LE(max_abs(multivector_derivative(f, gamma(2), GradeSet{1}) - gamma(0)), 1e-15);
}

TEST(MultivectorDerivative, SandwichRuleStructuralAndNumeric) {
  gen::Gen g(46);
  for (int i = 0; i < 100; ++i) {
    const auto x0 = g.multivector(GradeSet::even());
    const auto y = g.multivector(GradeSet::even());
    const auto z = g.multivector(GradeSet::even());
    auto body = [y, z](auto x) {
      using T = typename std::decay_t<decltype(x[0])>::scalar_type;
      return scalar_product(constant_as<T>(y) * x[0] * constant_as<T>(z), x[0]);
    };
    const auto want = grade_restrict(y * x0 * z + reverse(y) * x0 * reverse(z), GradeSet::even());
    EXPECT_LE(rel(multivector_derivative(ScalarFn::from(body, 1), x0, GradeSet::even()), want), 1e-12);
    EXPECT_LE(rel(multivector_derivative(ScalarFn::numeric(body, 1), x0, GradeSet::even()), want), 1e-6);
  }
}

TEST(MultivectorDerivative, GradeMismatchThrows) {
  const auto f = ScalarFn::from([](auto x) { return scalar_product(x[0], x[0]); }, 1);
  EXPECT_THROW((void)multivector_derivative(f, gamma(0) + pseudoscalar(), GradeSet{1}), GradeError);
}

TEST(ScalarFnCarrier, ArityIsChecked) {
  const auto f = ScalarFn::from([](auto x) { return scalar_product(x[0], x[1]); }, 2);
  EXPECT_EQ(f.arity(), 2);
  EXPECT_TRUE(f.structural());
  EXPECT_DOUBLE_EQ(f({gamma(0), gamma(0)}), 1.0);
  EXPECT_THROW((void)f({gamma(0)}), std::invalid_argument);
  const auto n = ScalarFn::numeric([](Slots<double> x) { return x[0].scalar(); }, 1);
  EXPECT_FALSE(n.structural());
}

TEST(BoundaryCurrent, Examples) {
  gen::Gen g(47);
  const auto y = g.field(GradeSet::all());
  const auto c = FieldExpr::constant(2.0);
  const auto x = FieldExpr::position();
  for (int i = 0; i < 5; ++i) {
    const auto p = g.point();
    EXPECT_EQ(boundary_current_flat(c, y, DelMode::divergence)(p), Multivector());
    EXPECT_EQ(boundary_current_flat(x, x, DelMode::curl)(p), Multivector());
  }
}

TEST(FlatIdentity, ConstantsGiveExactZero) {
  gen::Gen g(48);
  const auto pts = g.points(20);
  const auto x = FieldExpr::constant(g.multivector());
  const auto y = FieldExpr::constant(g.multivector());
  for (const auto m : {DelMode::gradient, DelMode::divergence, DelMode::curl}) EXPECT_EQ(check_identity_flat(x, y, m, pts), 0.0);
}

TEST(FlatIdentity, PositionFieldSelfPairing) {
  gen::Gen g(49);
  const auto pts = g.points(100);
  const auto x = FieldExpr::position();
  for (const auto m : {DelMode::gradient, DelMode::divergence, DelMode::curl}) EXPECT_LE(check_identity_flat(x, x, m, pts), 1e-10);
}

TEST(FlatIdentity, RandomMixedGradePairs) {
  gen::Gen g(50);
  const auto pts = g.points(20);
  for (int i = 0; i < 20; ++i) {
    const auto x = g.field(g.grades());
    const auto y = g.field(g.grades());
    for (const auto m : {DelMode::gradient, DelMode::divergence, DelMode::curl}) EXPECT_LE(check_identity_flat(x, y, m, pts), 1e-8);
  }
}

TEST(FlatIdentity, DetectsABrokenProductRule) {
  // Swapping the dual pairing must break the identity for generic fields.
  gen::Gen g(51);
  const auto pts = g.points(5);
  const auto x = g.field(GradeSet{1});
  const auto y = g.field(GradeSet{2});
  double worst = 0.0;
  for (const auto& p : pts) {
    const double lhs = scalar_product(del(x, DelMode::curl, p), y(p)) + scalar_product(x(p), del(y, DelMode::curl, p));
    const double rhs = del(boundary_current_flat(x, y, DelMode::curl), DelMode::divergence, p).scalar();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(Gauss, LinearAndConstantFields) {
  const auto lin = gauss_check(FieldExpr::position(), Box{}, 3);
  EXPECT_NEAR(lin.volume, 4.0, 1e-13);
  EXPECT_NEAR(lin.flux, 4.0, 1e-13);
  const auto con = gauss_check(FieldExpr::constant(gamma(1) + gamma(2)), Box{}, 3);
  EXPECT_EQ(con.volume, 0.0);
  EXPECT_NEAR(con.flux, 0.0, 1e-15);
}

TEST(Gauss, ScaledBoxVolume) {
  Box b;
  b.lo = {-1, 0, 0, 0};
  b.hi = {1, 2, 0.5, 1};
  const auto r = gauss_check(FieldExpr::position(), b, 2);
  EXPECT_NEAR(r.volume, 4.0 * 2.0 * 2.0 * 0.5, 1e-12);
  EXPECT_NEAR(r.flux, r.volume, 1e-12);
}

TEST(Gauss, TrigFieldGapShrinksQuadratically) {
  const auto v = (FieldExpr::constant(gamma(1)) * sin(FieldExpr::coordinate(gamma(1) * -2.0)) +
                  FieldExpr::constant(gamma(0)) * cos(FieldExpr::coordinate(gamma(0) + gamma(2))))
                     .with_grades(GradeSet{1});
  const auto a = gauss_check(v, Box{}, 8);
  const auto b = gauss_check(v, Box{}, 16);
  const double ratio = std::abs(a.volume - a.flux) / std::abs(b.volume - b.flux);
  EXPECT_NEAR(ratio, 4.0, 0.8);
}

TEST(Gauss, RejectsTooFewCells) { EXPECT_THROW((void)gauss_check(FieldExpr::position(), Box{}, 1), std::invalid_argument); }
