#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "mfl/extensor.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace mfl;

namespace {

Extensor11 boost_like() {
  Extensor11 t = Extensor11::identity();
  t(1, 0) = 1.0;  // t(gamma_0) = gamma_0 + gamma_1
  return t;
}

Eigen::Matrix4d matrix(const Extensor11& t) {
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = t(r, c);
  }
  return m;
}

double rel(const Multivector& d, const Multivector& ref) { return max_abs(d) / std::max(1.0, max_abs(ref)); }

}  // namespace

TEST(Extensor, ApplyExamples) {
  EXPECT_EQ(Extensor11::identity().apply(gamma(2)), gamma(2));
  EXPECT_EQ(Extensor11::scaled(2.0).apply(gamma(1)), gamma(1) * 2.0);
  EXPECT_EQ(boost_like().apply(gamma(0)), gamma(0) + gamma(1));
}

TEST(Extensor, AdjointDefiningRelationExhaustive) {
  const auto t = boost_like();
  const auto ta = t.adjoint();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      EXPECT_EQ(scalar_product(t.apply(gamma(mu)), gamma(nu)), scalar_product(gamma(mu), ta.apply(gamma(nu))));
    }
  }
  EXPECT_EQ(max_abs_difference(Extensor11::identity().adjoint(), Extensor11::identity()), 0.0);
  EXPECT_EQ(max_abs_difference(Extensor11::scaled(3.0).adjoint(), Extensor11::scaled(3.0)), 0.0);
}

TEST(Extensor, AdjointIsInvolutive) {
  gen::Gen g(21);
  const auto t = g.extensor();
  EXPECT_EQ(max_abs_difference(t.adjoint().adjoint(), t), 0.0);
}

TEST(Extensor, ExtendExamples) {
  gen::Gen g(22);
  const auto x = g.multivector();
  EXPECT_EQ(Extensor11::identity().extend(x), x);
  const auto t = g.extensor();
  EXPECT_LE(max_abs(t.extend(outer(gamma(1), gamma(2))) - outer(t.apply(gamma(1)), t.apply(gamma(2)))), 1e-15);
  EXPECT_EQ(Extensor11::scaled(2.0).extend(pseudoscalar()), pseudoscalar() * 16.0);
  EXPECT_EQ(t.extend(Multivector(3.0)), Multivector(3.0));
}

TEST(Extensor, ExtendedMatrixMatchesExtend) {
  gen::Gen g(23);
  const auto t = g.extensor();
  const ExtendedExtensor big(t);
  for (int i = 0; i < 20; ++i) {
    const auto x = g.multivector();
    EXPECT_LE(max_abs(big(x) - t.extend(x)), 1e-14);
  }
  // Block-diagonal by grade.
  for (unsigned r = 0; r < 16; ++r) {
    for (unsigned c = 0; c < 16; ++c) {
      if (std::popcount(r) != std::popcount(c)) EXPECT_EQ(big.entry(r, c), 0.0);
    }
  }
}

TEST(Extensor, DeterminantExamplesAndLeibnizOracle) {
  EXPECT_EQ(Extensor11::identity().determinant(), 1.0);
  EXPECT_EQ(Extensor11::scaled(2.0).determinant(), 16.0);
  gen::Gen g(24);
  for (int i = 0; i < 50; ++i) {
    const auto t = g.extensor();
    const double want = oracle::determinant(t.matrix());
    EXPECT_NEAR(t.determinant(), want, 1e-13 * std::max(1.0, std::abs(want)));
    EXPECT_NEAR(matrix_determinant(t), want, 1e-13 * std::max(1.0, std::abs(want)));
    EXPECT_NEAR(checked_determinant(t), want, 1e-13 * std::max(1.0, std::abs(want)));
  }
}

TEST(Extensor, DeterminantIsMultiplicativeAndAdjointInvariant) {
  gen::Gen g(25);
  for (int i = 0; i < 50; ++i) {
    const auto s = g.extensor();
    const auto t = g.extensor();
    EXPECT_NEAR(compose(s, t).determinant(), s.determinant() * t.determinant(), 1e-12);
    EXPECT_NEAR(t.adjoint().determinant(), t.determinant(), 1e-13);
    EXPECT_NEAR(t.inverse().determinant(), 1.0 / t.determinant(), 1e-12);
  }
}

TEST(Extensor, InverseMatchesEigen) {
  gen::Gen g(26);
  for (int i = 0; i < 50; ++i) {
    const auto t = g.extensor();
    const Eigen::Matrix4d want = matrix(t).inverse();
    const auto inv = t.inverse();
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) EXPECT_NEAR(inv(r, c), want(r, c), 1e-12);
    }
    EXPECT_LE(max_abs_difference(compose(t, inv), Extensor11::identity()), 1e-13);
  }
}

TEST(Extensor, SingularInverseThrows) {
  Extensor11 t = Extensor11::identity();
  t(0, 0) = 0.0;  // t(gamma_0) = 0
  EXPECT_THROW((void)t.inverse(), SingularExtensorError);
  EXPECT_THROW((void)gauge_star(t), SingularExtensorError);
  Extensor11 tiny = Extensor11::scaled(1e-3);  // det 1e-12, under the gate
  EXPECT_THROW((void)tiny.inverse(), SingularExtensorError);
}

TEST(Extensor, GaugeStarExamples) {
  EXPECT_EQ(max_abs_difference(gauge_star(Extensor11::identity()), Extensor11::identity()), 0.0);
  EXPECT_LE(max_abs_difference(gauge_star(Extensor11::scaled(4.0)), Extensor11::scaled(0.25)), 1e-15);
}

TEST(Extensor, GaugeStarDeterminantIsReciprocal) {
  gen::Gen g(27);
  for (int i = 0; i < 100; ++i) {
    const auto h = g.extensor();
    EXPECT_NEAR(gauge_star(h).determinant() * h.determinant(), 1.0, 1e-9);
  }
}

TEST(Extensor, OutermorphismMultiplicativity) {
  gen::Gen g(28);
  for (int i = 0; i < 100; ++i) {
    const auto t = g.extensor();
    const auto a = g.multivector();
    const auto b = g.multivector();
    const auto lhs = t.extend(outer(a, b));
    EXPECT_LE(rel(lhs - outer(t.extend(a), t.extend(b)), lhs), 1e-10);
  }
}

TEST(Extensor, ContractionTransportAllBasisPairs) {
  gen::Gen g(29);
  for (int i = 0; i < 20; ++i) {
    const auto t = g.extensor();
    for (int mu = 0; mu < 4; ++mu) {
      for (unsigned b = 0; b < 16; ++b) {
        const auto a = gamma(mu);
        const auto bb = Multivector::blade(b);
        const auto lhs = left_contraction(a, t.extend(bb));
        EXPECT_LE(rel(lhs - t.extend(left_contraction(t.adjoint().apply(a), bb)), lhs), 1e-12);
      }
    }
  }
}

TEST(Extensor, AdjointExtensionOnHomogeneousPairs) {
  gen::Gen g(30);
  for (int i = 0; i < 50; ++i) {
    const auto t = g.extensor();
    for (int r = 0; r <= 4; ++r) {
      const auto a = g.multivector(GradeSet{r});
      const auto b = g.multivector(GradeSet{r});
      EXPECT_NEAR(scalar_product(t.extend(a), b), scalar_product(a, t.adjoint().extend(b)), 1e-10);
    }
  }
}

TEST(Extensor, LinearityAndPseudoscalarImage) {
  gen::Gen g(31);
  const auto t = g.extensor();
  const auto a = g.vector();
  const auto b = g.vector();
  EXPECT_LE(max_abs(t.apply(a * 2.0 + b * -3.0) - (t.apply(a) * 2.0 + t.apply(b) * -3.0)), 1e-14);
  EXPECT_LE(max_abs(t.extend(pseudoscalar()) - pseudoscalar() * t.determinant()), 1e-14);
}
