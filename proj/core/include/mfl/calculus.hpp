#pragma once

// Flat-space derivatives of multiform fields and the flat appendix identities.

#include <span>
#include <utility>
#include <vector>

#include "mfl/field.hpp"
#include "mfl/multivector.hpp"
#include "mfl/scalar_fn.hpp"

namespace mfl {

/// gamma^mu * Z_mu, with Z_mu the mu-th partial carried by a jet value.
template <class T>
BasicMultivector<T> del_jet(const BasicMultivector<Up<T>>& z, DelMode mode) {
  BasicMultivector<T> out;
  for (int mu = 0; mu < 4; ++mu) {
    const auto g = constant_as<T>(gamma_up(mu));
    const auto p = partial_part(z, static_cast<std::size_t>(mu));
    switch (mode) {
      case DelMode::gradient:
        out += g * p;
        break;
      case DelMode::divergence:
        out += left_contraction(g, p);
        break;
      case DelMode::curl:
        out += outer(g, p);
        break;
    }
  }
  return out;
}

/// The product a * X of a 1-form with X matching a DelMode (geometric, left contraction, outer).
template <class T>
BasicMultivector<T> mode_product(const BasicMultivector<T>& a, const BasicMultivector<T>& x, DelMode mode) {
  switch (mode) {
    case DelMode::gradient:
      return a * x;
    case DelMode::divergence:
      return left_contraction(a, x);
    case DelMode::curl:
      return outer(a, x);
  }
  return {};
}

/// The operator paired with `mode` in the flat identities: divergence <-> curl, gradient <-> gradient.
constexpr DelMode dual_mode(DelMode mode) {
  switch (mode) {
    case DelMode::divergence:
      return DelMode::curl;
    case DelMode::curl:
      return DelMode::divergence;
    case DelMode::gradient:
      return DelMode::gradient;
  }
  return DelMode::gradient;
}

/// Grades of del(X) for X with grades g.
GradeSet del_grades(GradeSet g, DelMode mode);

const char* to_string(DelMode mode);

Multivector directional_derivative(const FieldExpr& x, const Multivector& a, const PositionForm& p);

Multivector del(const FieldExpr& x, DelMode mode, const PositionForm& p);

/// v = sum_mu gamma^mu [(gamma_mu * X) . Y] as a 1-form field.
FieldExpr boundary_current_flat(const FieldExpr& x, const FieldExpr& y, DelMode mode);

/// max over points of |(del* X).Y + X.(del*' Y) - del . v|.
double check_identity_flat(const FieldExpr& x, const FieldExpr& y, DelMode mode, std::span<const PositionForm> points);

/// max over points of the largest component of del X - del_| X - del^X.
double check_del_split(const FieldExpr& x, std::span<const PositionForm> points);

struct Box {
  std::array<double, 4> lo{};
  std::array<double, 4> hi{1.0, 1.0, 1.0, 1.0};
};

struct GaussResult {
  double volume = 0.0;
  double flux = 0.0;
};

/// Midpoint-rule volume integral of del . v over n^4 cells against the outward face flux of v.
GaussResult gauss_check(const FieldExpr& v, const Box& box, int n);

}  // namespace mfl
