#include <algorithm>
#include <cmath>

#include "mfl/extensor.hpp"
#include "mfl/random_fields.hpp"
#include "suite.hpp"

namespace verify {

using namespace mfl;

namespace {

constexpr int kTriples = 200;
constexpr int kExtensors = 100;

double rel(const Multivector& diff, double scale) { return max_abs(diff) / std::max(1.0, scale); }

}  // namespace

void run_algebra(Suite& s) {
  // Basis-exhaustive checks are exact: tolerance 0 admits no rounding at all.
  s.check("anticommutation", 0.0, [] {
    double m = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        const double eta = mu == nu ? kMetric[static_cast<std::size_t>(mu)] : 0.0;
        m = std::max(m, max_abs(gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu) - Multivector(2.0 * eta)));
      }
    }
    return m;
  });
  s.check("contraction-outer-duality", 0.0, [] {
    double m = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      for (unsigned b = 0; b < kBlades; ++b) {
        for (unsigned c = 0; c < kBlades; ++c) {
          const auto a = gamma(mu);
          const auto bb = Multivector::blade(b);
          const auto cc = Multivector::blade(c);
          m = std::max(m, std::abs(scalar_product(left_contraction(a, bb), cc) - scalar_product(bb, outer(a, cc))));
        }
      }
    }
    return m;
  });
  s.check("vector-product-split", 0.0, [] {
    double m = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      for (unsigned b = 0; b < kBlades; ++b) {
        const auto a = gamma(mu);
        const auto x = Multivector::blade(b);
        m = std::max(m, max_abs(a * x - left_contraction(a, x) - outer(a, x)));
      }
    }
    return m;
  });

  RandomSource rng(s.config().seed);
  std::vector<std::array<Multivector, 3>> triples(kTriples);
  for (auto& t : triples) {
    for (auto& x : t) x = rng.multivector();
  }
  s.check("associativity", 1e-12, [&] {
    double m = 0.0;
    for (const auto& [a, b, c] : triples) m = std::max(m, rel((a * b) * c - a * (b * c), norm(a) * norm(b) * norm(c)));
    return m;
  });
  s.check("reverse-antihomomorphism", 1e-12, [&] {
    double m = 0.0;
    for (const auto& [a, b, c] : triples) m = std::max(m, rel(reverse(a * b) - reverse(b) * reverse(a), norm(a) * norm(b)));
    return m;
  });
  s.check("scalar-product-symmetry", 1e-12, [&] {
    double m = 0.0;
    for (const auto& [a, b, c] : triples) {
      const double ab = scalar_product(a, b);
      m = std::max(m, std::abs(ab - scalar_product(b, a)) / std::max(1.0, norm(a) * norm(b)));
      m = std::max(m, std::abs(ab - (a * reverse(b)).scalar()) / std::max(1.0, norm(a) * norm(b)));
    }
    return m;
  });

  std::vector<Extensor11> hs(kExtensors);
  for (auto& h : hs) h = rng.invertible_extensor();
  std::vector<std::array<Multivector, 2>> args(kExtensors);
  for (auto& a : args) {
    a[0] = rng.multivector();
    a[1] = rng.multivector();
  }

  s.check("extensor-outermorphism", 1e-9, [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const auto& [a, b] = args[i];
      const auto lhs = hs[i].extend(outer(a, b));
      m = std::max(m, rel(lhs - outer(hs[i].extend(a), hs[i].extend(b)), norm(lhs)));
    }
    return m;
  });
  s.check("extensor-contraction-transport", 1e-9, [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const auto a = grade_project(args[i][0], 1);
      const auto& b = args[i][1];
      const auto lhs = left_contraction(a, hs[i].extend(b));
      const auto rhs = hs[i].extend(left_contraction(hs[i].adjoint().apply(a), b));
      m = std::max(m, rel(lhs - rhs, norm(lhs)));
    }
    return m;
  });
  s.check("extensor-adjoint-extension", 1e-9, [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const auto& [a, b] = args[i];
      const double lhs = scalar_product(hs[i].extend(a), b);
      const double rhs = scalar_product(a, hs[i].adjoint().extend(b));
      m = std::max(m, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return m;
  });
  s.check("extensor-det-star", 1e-9, [&] {
    double m = 0.0;
    for (const auto& h : hs) m = std::max(m, std::abs(gauge_star(h).determinant() * h.determinant() - 1.0));
    return m;
  });
  s.check("extensor-determinant-routes", 1e-9, [&] {
    double m = 0.0;
    for (const auto& h : hs) {
      const double d = h.determinant();
      m = std::max(m, std::abs(d - matrix_determinant(h)) / std::max(1.0, std::abs(d)));
    }
    return m;
  });
  s.check("extensor-inverse", 1e-9, [&] {
    double m = 0.0;
    for (const auto& h : hs) m = std::max(m, max_abs_difference(compose(h, h.inverse()), Extensor11::identity()));
    return m;
  });
  s.check("extensor-pseudoscalar-image", 1e-9, [&] {
    double m = 0.0;
    for (const auto& h : hs) {
      const double d = h.determinant();
      m = std::max(m, rel(h.extend(pseudoscalar()) - pseudoscalar() * d, std::abs(d)));
    }
    return m;
  });
}

}  // namespace verify
