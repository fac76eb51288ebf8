#pragma once

// Multiform fields as expression trees over the position form.
//
// A FieldExpr maps x = x^mu gamma_mu to a multivector. Evaluation is generic
// over the jet scalars Jet<0..3>: evaluating at a seeded jet position yields
// the value together with exact partial derivatives, propagated node by node.

#include <array>
#include <memory>
#include <optional>

#include "mfl/dual.hpp"
#include "mfl/extensor.hpp"
#include "mfl/multivector.hpp"

namespace mfl {

/// x = x^mu gamma_mu relative to the affine origin.
struct PositionForm {
  std::array<double, 4> coords{};

  Multivector form() const;
  PositionForm shifted(const Multivector& a, double lambda) const;
};

/// Jet position: coordinates carry unit derivative seeds at every nesting level.
template <class T>
T seed_coordinate(double value, int mu) {
  if constexpr (is_dual_v<T>) {
    using U = typename T::value_type;
    T r(seed_coordinate<U>(value, mu));
    r.d[static_cast<std::size_t>(mu)] = U(1.0);
    return r;
  } else {
    return value;
  }
}

template <class T>
BasicMultivector<T> seeded_position(const PositionForm& p) {
  BasicMultivector<T> x;
  for (int mu = 0; mu < 4; ++mu) x[1u << mu] = seed_coordinate<T>(p.coords[static_cast<std::size_t>(mu)], mu);
  return x;
}

/// Raise an already seeded position one jet level.
template <class T>
BasicMultivector<Up<T>> raise_point(const BasicMultivector<T>& x) {
  BasicMultivector<Up<T>> r;
  for (int mu = 0; mu < 4; ++mu) {
    Up<T> c(x[1u << mu]);
    c.d[static_cast<std::size_t>(mu)] = T(1.0);
    r[1u << mu] = c;
  }
  return r;
}

class ExtensorField;

enum class ExtensorAction { direct, adjoint, inverse, star };

class FieldExpr {
 public:
  struct Node;

  /// The zero field.
  FieldExpr();

  static FieldExpr constant(const Multivector& value);
  static FieldExpr constant(double value) { return constant(Multivector(value)); }
  /// The position form x itself.
  static FieldExpr position();
  /// Scalar field x . k.
  static FieldExpr coordinate(const Multivector& k);

  friend FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr operator-(const FieldExpr& a);
  friend FieldExpr operator*(double s, const FieldExpr& a);
  friend FieldExpr operator*(const FieldExpr& a, double s) { return s * a; }
  /// Geometric product.
  friend FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr outer(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr left_contraction(const FieldExpr& a, const FieldExpr& b);
  /// Scalar-valued field a . b.
  friend FieldExpr scalar_product(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr commutator(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr reverse(const FieldExpr& a);
  friend FieldExpr grade_project(const FieldExpr& a, int r);
  friend FieldExpr grade_restrict(const FieldExpr& a, GradeSet g);

  // Scalar functions of the scalar part.
  friend FieldExpr sin(const FieldExpr& a);
  friend FieldExpr cos(const FieldExpr& a);
  friend FieldExpr exp(const FieldExpr& a);
  friend FieldExpr pow(const FieldExpr& a, int n);

  /// exp(B * angle) for a constant B whose square is a scalar.
  static FieldExpr bivector_exp(const Multivector& blade, const FieldExpr& angle);
  /// Outermorphism of a (possibly position-dependent) extensor applied to a.
  static FieldExpr apply_extensor(const ExtensorField& t, const FieldExpr& a,
                                  ExtensorAction action = ExtensorAction::direct);
  /// a . partial X, as a field.
  static FieldExpr directional(const FieldExpr& x, const Multivector& a);

  /// Override the structurally inferred grade signature.
  FieldExpr with_grades(GradeSet g) const;
  GradeSet grades() const;

  template <class T>
  BasicMultivector<T> eval(const BasicMultivector<T>& x) const;

  Multivector operator()(const PositionForm& p) const { return eval<double>(p.form()); }

  const Node& node() const { return *node_; }
  static FieldExpr from_node(std::shared_ptr<const Node> n) { return FieldExpr(std::move(n)); }

 private:
  explicit FieldExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

extern template BasicMultivector<Jet<0>> FieldExpr::eval(const BasicMultivector<Jet<0>>&) const;
extern template BasicMultivector<Jet<1>> FieldExpr::eval(const BasicMultivector<Jet<1>>&) const;
extern template BasicMultivector<Jet<2>> FieldExpr::eval(const BasicMultivector<Jet<2>>&) const;
extern template BasicMultivector<Jet<3>> FieldExpr::eval(const BasicMultivector<Jet<3>>&) const;

/// Position-dependent (1,1)-extensor: 16 scalar fields, entry (nu, mu) as in BasicExtensor.
class ExtensorField {
 public:
  ExtensorField() : ExtensorField(constant(Extensor11::identity())) {}
  explicit ExtensorField(const std::array<FieldExpr, 16>& entries) : entries_(entries) {}

  static ExtensorField constant(const Extensor11& t);
  static ExtensorField identity() { return constant(Extensor11::identity()); }
  /// h(a) = R a reverse(R), evaluating R once per point.
  static ExtensorField from_rotor(const FieldExpr& rotor);

  const FieldExpr& entry(int row, int col) const { return entries_[static_cast<std::size_t>(row * 4 + col)]; }
  bool is_constant() const { return constant_.has_value(); }

  template <class T>
  BasicExtensor<T> eval(const BasicMultivector<T>& x) const {
    if (rotor_) {
      const auto r = rotor_->eval(x);
      const auto rr = reverse(r);
      std::array<BasicMultivector<T>, 4> cols;
      for (int mu = 0; mu < 4; ++mu) cols[static_cast<std::size_t>(mu)] = r * constant_as<T>(gamma(mu)) * rr;
      return BasicExtensor<T>::from_columns(cols);
    }
    typename BasicExtensor<T>::Matrix m;
    if (constant_) {
      for (std::size_t i = 0; i < 16; ++i) m[i] = T(constant_->matrix()[i]);
    } else {
      for (std::size_t i = 0; i < 16; ++i) m[i] = entries_[i].eval(x).scalar();
    }
    return BasicExtensor<T>(m);
  }

  Extensor11 operator()(const PositionForm& p) const { return eval<double>(p.form()); }

 private:
  std::array<FieldExpr, 16> entries_;
  std::optional<Extensor11> constant_;
  std::optional<FieldExpr> rotor_;
};

/// Sum_mu gamma^mu * (partial_mu X) as a field, with * the geometric product,
/// left contraction or outer product.
enum class DelMode { gradient, divergence, curl };
FieldExpr del_expr(const FieldExpr& x, DelMode mode);

/// Scalar field x^mu (the mu-th coordinate).
inline FieldExpr coordinate_component(int mu) { return FieldExpr::coordinate(gamma_up(mu)); }

}  // namespace mfl
