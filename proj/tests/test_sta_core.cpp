#include <gtest/gtest.h>

#include "mfl/multivector.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace mfl;

namespace {

Multivector e(unsigned mask) { return Multivector::blade(mask); }
const Multivector kI = pseudoscalar();

}  // namespace

TEST(GeometricProduct, MatchesGeneratorWordOracleOnEveryBladePair) {
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned b = 0; b < 16; ++b) {
      const auto [s, m] = oracle::blade_product(a, b);
      EXPECT_EQ(e(a) * e(b), Multivector::blade(m, s)) << blade_name(a) << " * " << blade_name(b);
    }
  }
}

TEST(GeometricProduct, Examples) {
  EXPECT_EQ(gamma(0) * gamma(0), Multivector(1.0));
  EXPECT_EQ(gamma(1) * gamma(1), Multivector(-1.0));
  EXPECT_EQ(gamma(1) * gamma(2), e(0b0110));
  EXPECT_EQ(kI * kI, Multivector(-1.0));
}

TEST(GeometricProduct, AnticommutationIsExact) {
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const double eta = mu == nu ? oracle::kEta[static_cast<std::size_t>(mu)] : 0.0;
      EXPECT_EQ(gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu), Multivector(2.0 * eta));
    }
  }
}

TEST(GeometricProduct, AssociativeOnRandomTriples) {
  gen::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = g.multivector();
    const auto b = g.multivector();
    const auto c = g.multivector();
    EXPECT_LE(max_abs((a * b) * c - a * (b * c)), 1e-12 * std::max(1.0, norm(a) * norm(b) * norm(c)));
    EXPECT_LE(max_abs(a * b - oracle::product(a, b)), 1e-14);
  }
}

TEST(OuterProduct, Examples) {
  EXPECT_EQ(outer(gamma(1), gamma(2)), e(0b0110));
  EXPECT_EQ(outer(gamma(1), gamma(1)), Multivector());
  EXPECT_EQ(outer(kI, gamma(0)), Multivector());
}

TEST(OuterProduct, MatchesGradeProjectionOracle) {
  gen::Gen g(12);
  for (int i = 0; i < 50; ++i) {
    const auto a = g.multivector();
    const auto b = g.multivector();
    EXPECT_LE(max_abs(outer(a, b) - oracle::graded_product(a, b, false)), 1e-14);
    EXPECT_LE(max_abs(left_contraction(a, b) - oracle::graded_product(a, b, true)), 1e-14);
  }
}

TEST(LeftContraction, Examples) {
  EXPECT_EQ(left_contraction(gamma(0), e(0b0011)), gamma(1));
  EXPECT_EQ(left_contraction(gamma(2), Multivector(3.0)), Multivector());
}

TEST(LeftContraction, VectorOnBivectorExpansionOverAllBasisTriples) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        const auto va = gamma(a);
        const auto vb = gamma(b);
        const auto vc = gamma(c);
        const auto want = vc * scalar_product(va, vb) - vb * scalar_product(va, vc);
        EXPECT_EQ(left_contraction(va, outer(vb, vc)), want);
      }
    }
  }
}

TEST(LeftContraction, DualToOuterExhaustively) {
  for (int mu = 0; mu < 4; ++mu) {
    for (unsigned b = 0; b < 16; ++b) {
      for (unsigned c = 0; c < 16; ++c) {
        EXPECT_EQ(scalar_product(left_contraction(gamma(mu), e(b)), e(c)), scalar_product(e(b), outer(gamma(mu), e(c))));
      }
    }
  }
}

TEST(LeftContraction, VectorProductSplitExhaustively) {
  for (int mu = 0; mu < 4; ++mu) {
    for (unsigned b = 0; b < 16; ++b) {
      EXPECT_EQ(gamma(mu) * e(b), left_contraction(gamma(mu), e(b)) + outer(gamma(mu), e(b)));
    }
  }
}

TEST(ScalarProduct, ReciprocalBasisIsDual) {
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      EXPECT_EQ(scalar_product(gamma_up(mu), gamma(nu)), mu == nu ? 1.0 : 0.0);
      EXPECT_EQ(scalar_product(gamma(mu), gamma(nu)), mu == nu ? oracle::kEta[static_cast<std::size_t>(mu)] : 0.0);
    }
  }
}

TEST(ScalarProduct, Examples) {
  EXPECT_EQ(scalar_product(kI, kI), -1.0);
  EXPECT_EQ(scalar_product(e(0b0011), e(0b1100)), 0.0);
}

TEST(ScalarProduct, ReciprocalBladesPairToOne) {
  for (unsigned m = 0; m < 16; ++m) EXPECT_EQ(scalar_product(reciprocal_blade(m), e(m)), 1.0);
}

TEST(ScalarProduct, SymmetricAndEqualsScalarPartOfProductWithReverse) {
  gen::Gen g(13);
  for (int i = 0; i < 100; ++i) {
    const auto a = g.multivector();
    const auto b = g.multivector();
    EXPECT_DOUBLE_EQ(scalar_product(a, b), scalar_product(b, a));
    EXPECT_NEAR(scalar_product(a, b), (a * reverse(b)).scalar(), 1e-15);
  }
}

TEST(Reverse, Examples) {
  EXPECT_EQ(reverse(gamma(0)), gamma(0));
  EXPECT_EQ(reverse(e(0b0011)), -e(0b0011));
  EXPECT_EQ(reverse(kI), kI);
}

TEST(Reverse, InvolutiveAntiHomomorphism) {
  gen::Gen g(14);
  for (int i = 0; i < 100; ++i) {
    const auto a = g.multivector();
    const auto b = g.multivector();
    EXPECT_EQ(reverse(reverse(a)), a);
    EXPECT_LE(max_abs(reverse(a * b) - reverse(b) * reverse(a)), 1e-14);
  }
}

TEST(Grades, ProjectionAndRestriction) {
  EXPECT_EQ(grade_project(Multivector(1.0) + gamma(0) + e(0b0011), 1), gamma(0));
  EXPECT_EQ(grade_restrict(gamma(0) + e(0b0011) + kI, GradeSet::even()), e(0b0011) + kI);
  EXPECT_THROW((void)grade_project(gamma(0), 5), std::out_of_range);
  EXPECT_THROW((void)grade_project(gamma(0), -1), std::out_of_range);

  gen::Gen g(15);
  const auto x = g.multivector();
  Multivector sum;
  for (int r = 0; r <= 4; ++r) sum += grade_project(x, r);
  EXPECT_EQ(sum, x);
}

TEST(Grades, GradeSetOfValue) {
  EXPECT_EQ(grade_set(gamma(0) + kI), (GradeSet{1, 4}));
  EXPECT_EQ(grade_set(Multivector()), GradeSet{});
  EXPECT_EQ(grade_set(gamma(0) * 1e-14 + Multivector(1.0), 1e-12), GradeSet{0});
  EXPECT_EQ((GradeSet{1, 3}).shifted(1), (GradeSet{2, 4}));
  EXPECT_EQ((GradeSet{0, 4}).shifted(1), GradeSet{1});
  EXPECT_THROW(GradeSet{5}, std::out_of_range);
}

TEST(Commutator, Examples) {
  EXPECT_EQ(commutator(e(0b0110), gamma(1)), gamma(2));
  gen::Gen g(16);
  const auto x = g.multivector();
  EXPECT_EQ(commutator(x, x), Multivector());
  EXPECT_EQ(commutator(Multivector(2.0), x), Multivector());
}

TEST(Commutator, BivectorPreservesGrade) {
  gen::Gen g(17);
  for (int i = 0; i < 50; ++i) {
    const auto b = g.multivector(GradeSet{2});
    for (int r = 0; r <= 4; ++r) {
      const auto x = g.multivector(GradeSet{r});
      EXPECT_TRUE(grade_set(commutator(b, x), 1e-14).subset_of(GradeSet{r}));
    }
  }
}

TEST(Pseudoscalar, CommutesWithEvenAnticommutesWithOdd) {
  gen::Gen g(18);
  const auto ev = g.multivector(GradeSet::even());
  const auto od = g.multivector(GradeSet::odd());
  EXPECT_LE(max_abs(kI * ev - ev * kI), 1e-15);
  EXPECT_LE(max_abs(kI * od + od * kI), 1e-15);
}
