#include "mfl/field.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

namespace mfl {

Multivector PositionForm::form() const { return Multivector::vector(coords); }

PositionForm PositionForm::shifted(const Multivector& a, double lambda) const {
  PositionForm p = *this;
  for (int mu = 0; mu < 4; ++mu) p.coords[static_cast<std::size_t>(mu)] += lambda * a[1u << mu];
  return p;
}

namespace {

enum class BinaryOp { geometric, outer, contraction, scalar, commutator };
enum class UnaryOp { reverse, project, restrict_grades };
enum class ScalarFunc { sin, cos, exp, pow };

struct ConstNode {
  Multivector value;
};
struct PositionNode {};
struct CoordinateNode {
  Multivector k;
};
struct SumNode {
  FieldExpr a, b;
};
struct ScaleNode {
  double s;
  FieldExpr a;
};
struct BinaryNode {
  BinaryOp op;
  FieldExpr a, b;
};
struct UnaryNode {
  UnaryOp op;
  FieldExpr a;
  int arg;
};
struct FuncNode {
  ScalarFunc f;
  FieldExpr a;
  int n;
};
struct BivectorExpNode {
  Multivector blade;
  double square;
  FieldExpr angle;
};
struct ExtensorNode {
  ExtensorField t;
  ExtensorAction action;
  FieldExpr a;
};
struct DirectionalNode {
  FieldExpr a;
  Multivector dir;
};

GradeSet product_grades(GradeSet a, GradeSet b, BinaryOp op) {
  GradeSet out;
  for (int r = 0; r <= 4; ++r) {
    if (!a.contains(r)) continue;
    for (int s = 0; s <= 4; ++s) {
      if (!b.contains(s)) continue;
      switch (op) {
        case BinaryOp::geometric:
        case BinaryOp::commutator:
          for (int g = std::abs(r - s); g <= std::min(r + s, 8 - r - s); g += 2) out.insert(g);
          break;
        case BinaryOp::outer:
          if (r + s <= 4) out.insert(r + s);
          break;
        case BinaryOp::contraction:
          if (s >= r) out.insert(s - r);
          break;
        case BinaryOp::scalar:
          if (r == s) out.insert(0);
          break;
      }
    }
  }
  return out;
}

}  // namespace

struct FieldExpr::Node {
  using Variant = std::variant<ConstNode, PositionNode, CoordinateNode, SumNode, ScaleNode, BinaryNode, UnaryNode,
                               FuncNode, BivectorExpNode, ExtensorNode, DirectionalNode>;
  Variant v;
  GradeSet grades;
};

namespace {

template <class T>
BasicMultivector<T> eval_node(const FieldExpr::Node& node, const BasicMultivector<T>& x);

template <class T>
BasicMultivector<T> eval_impl(const ConstNode& n, const BasicMultivector<T>&) {
  return constant_as<T>(n.value);
}
template <class T>
BasicMultivector<T> eval_impl(const PositionNode&, const BasicMultivector<T>& x) {
  return x;
}
template <class T>
BasicMultivector<T> eval_impl(const CoordinateNode& n, const BasicMultivector<T>& x) {
  return BasicMultivector<T>(scalar_product(x, constant_as<T>(n.k)));
}
template <class T>
BasicMultivector<T> eval_impl(const SumNode& n, const BasicMultivector<T>& x) {
  return n.a.eval(x) + n.b.eval(x);
}
template <class T>
BasicMultivector<T> eval_impl(const ScaleNode& n, const BasicMultivector<T>& x) {
  return n.a.eval(x) * n.s;
}
template <class T>
BasicMultivector<T> eval_impl(const BinaryNode& n, const BasicMultivector<T>& x) {
  const auto a = n.a.eval(x);
  const auto b = n.b.eval(x);
  switch (n.op) {
    case BinaryOp::geometric:
      return a * b;
    case BinaryOp::outer:
      return outer(a, b);
    case BinaryOp::contraction:
      return left_contraction(a, b);
    case BinaryOp::scalar:
      return BasicMultivector<T>(scalar_product(a, b));
    case BinaryOp::commutator:
      return commutator(a, b);
  }
  throw std::logic_error("unreachable binary op");
}
template <class T>
BasicMultivector<T> eval_impl(const UnaryNode& n, const BasicMultivector<T>& x) {
  const auto a = n.a.eval(x);
  switch (n.op) {
    case UnaryOp::reverse:
      return reverse(a);
    case UnaryOp::project:
      return grade_project(a, n.arg);
    case UnaryOp::restrict_grades:
      return grade_restrict(a, GradeSet::from_bits(static_cast<std::uint8_t>(n.arg)));
  }
  throw std::logic_error("unreachable unary op");
}
template <class T>
BasicMultivector<T> eval_impl(const FuncNode& n, const BasicMultivector<T>& x) {
  using std::cos;
  using std::exp;
  using std::sin;
  const T s = n.a.eval(x).scalar();
  switch (n.f) {
    case ScalarFunc::sin:
      return BasicMultivector<T>(sin(s));
    case ScalarFunc::cos:
      return BasicMultivector<T>(cos(s));
    case ScalarFunc::exp:
      return BasicMultivector<T>(exp(s));
    case ScalarFunc::pow:
      return BasicMultivector<T>(ipow(s, n.n));
  }
  throw std::logic_error("unreachable scalar function");
}
template <class T>
BasicMultivector<T> eval_impl(const BivectorExpNode& n, const BasicMultivector<T>& x) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  const T theta = n.angle.eval(x).scalar();
  const auto blade = constant_as<T>(n.blade);
  if (n.square < 0.0) {
    const double w = std::sqrt(-n.square);
    return BasicMultivector<T>(cos(theta * w)) + scale(sin(theta * w) * (1.0 / w), blade);
  }
  if (n.square > 0.0) {
    const double w = std::sqrt(n.square);
    return BasicMultivector<T>(cosh(theta * w)) + scale(sinh(theta * w) * (1.0 / w), blade);
  }
  return BasicMultivector<T>(T(1.0)) + scale(theta, blade);
}
template <class T>
BasicMultivector<T> eval_impl(const ExtensorNode& n, const BasicMultivector<T>& x) {
  const auto t = n.t.eval(x);
  const auto a = n.a.eval(x);
  switch (n.action) {
    case ExtensorAction::direct:
      return t.extend(a);
    case ExtensorAction::adjoint:
      return t.adjoint().extend(a);
    case ExtensorAction::inverse:
      return t.inverse().extend(a);
    case ExtensorAction::star:
      return t.gauge_star().extend(a);
  }
  throw std::logic_error("unreachable extensor action");
}
template <class T>
BasicMultivector<T> eval_impl(const DirectionalNode& n, const BasicMultivector<T>& x) {
  if constexpr (jet_depth_v<T> < kMaxJetDepth) {
    const auto lifted = n.a.eval(raise_point(x));
    BasicMultivector<T> out;
    for (int nu = 0; nu < 4; ++nu) {
      const double c = n.dir[1u << nu];
      if (c == 0.0) continue;
      out += partial_part(lifted, static_cast<std::size_t>(nu)) * c;
    }
    return out;
  } else {
    throw std::domain_error("field derivative nesting exceeds the supported jet depth");
  }
}

template <class T>
BasicMultivector<T> eval_node(const FieldExpr::Node& node, const BasicMultivector<T>& x) {
  return std::visit([&](const auto& n) { return eval_impl<T>(n, x); }, node.v);
}

FieldExpr::Node make(FieldExpr::Node::Variant v, GradeSet g) { return FieldExpr::Node{std::move(v), g}; }

}  // namespace

template <class T>
BasicMultivector<T> FieldExpr::eval(const BasicMultivector<T>& x) const {
  return eval_node(*node_, x);
}

template BasicMultivector<Jet<0>> FieldExpr::eval(const BasicMultivector<Jet<0>>&) const;
template BasicMultivector<Jet<1>> FieldExpr::eval(const BasicMultivector<Jet<1>>&) const;
template BasicMultivector<Jet<2>> FieldExpr::eval(const BasicMultivector<Jet<2>>&) const;
template BasicMultivector<Jet<3>> FieldExpr::eval(const BasicMultivector<Jet<3>>&) const;

FieldExpr::FieldExpr() : node_(std::make_shared<const Node>(make(ConstNode{Multivector{}}, GradeSet{}))) {}

FieldExpr FieldExpr::constant(const Multivector& value) {
  return FieldExpr::from_node(std::make_shared<const Node>(make(ConstNode{value}, grade_set(value))));
}

FieldExpr FieldExpr::position() { return FieldExpr::from_node(std::make_shared<const Node>(make(PositionNode{}, GradeSet{1}))); }

FieldExpr FieldExpr::coordinate(const Multivector& k) {
  return FieldExpr::from_node(std::make_shared<const Node>(make(CoordinateNode{grade_project(k, 1)}, GradeSet{0})));
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  return FieldExpr::from_node(std::make_shared<const FieldExpr::Node>(make(SumNode{a, b}, a.grades() | b.grades())));
}

FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) { return a + (-1.0) * b; }

FieldExpr operator-(const FieldExpr& a) { return (-1.0) * a; }

FieldExpr operator*(double s, const FieldExpr& a) {
  return FieldExpr::from_node(std::make_shared<const FieldExpr::Node>(make(ScaleNode{s, a}, s == 0.0 ? GradeSet{} : a.grades())));
}

namespace {
FieldExpr binary(BinaryOp op, const FieldExpr& a, const FieldExpr& b);
}

FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) { return binary(BinaryOp::geometric, a, b); }
FieldExpr outer(const FieldExpr& a, const FieldExpr& b) { return binary(BinaryOp::outer, a, b); }
FieldExpr left_contraction(const FieldExpr& a, const FieldExpr& b) { return binary(BinaryOp::contraction, a, b); }
FieldExpr scalar_product(const FieldExpr& a, const FieldExpr& b) { return binary(BinaryOp::scalar, a, b); }
FieldExpr commutator(const FieldExpr& a, const FieldExpr& b) { return binary(BinaryOp::commutator, a, b); }

namespace {
FieldExpr unary(UnaryOp op, const FieldExpr& a, int arg, GradeSet g);
FieldExpr func(ScalarFunc f, const FieldExpr& a, int n);
}  // namespace

FieldExpr reverse(const FieldExpr& a) { return unary(UnaryOp::reverse, a, 0, a.grades()); }

FieldExpr grade_project(const FieldExpr& a, int r) {
  if (r < 0 || r > 4) throw std::out_of_range("grade_project: grade outside 0..4");
  return unary(UnaryOp::project, a, r, a.grades() & GradeSet{r});
}

FieldExpr grade_restrict(const FieldExpr& a, GradeSet g) {
  return unary(UnaryOp::restrict_grades, a, g.bits(), a.grades() & g);
}

FieldExpr sin(const FieldExpr& a) { return func(ScalarFunc::sin, a, 0); }
FieldExpr cos(const FieldExpr& a) { return func(ScalarFunc::cos, a, 0); }
FieldExpr exp(const FieldExpr& a) { return func(ScalarFunc::exp, a, 0); }
FieldExpr pow(const FieldExpr& a, int n) {
  if (n < 0) throw std::invalid_argument("pow: negative exponent");
  return func(ScalarFunc::pow, a, n);
}

FieldExpr FieldExpr::bivector_exp(const Multivector& blade, const FieldExpr& angle) {
  const Multivector sq = blade * blade;
  for (unsigned i = 1; i < kBlades; ++i) {
    if (std::abs(sq[i]) > 1e-14) throw std::invalid_argument("bivector_exp: blade square is not a scalar");
  }
  return FieldExpr::from_node(std::make_shared<const Node>(
      make(BivectorExpNode{blade, sq[0], angle}, GradeSet{0} | grade_set(blade))));
}

FieldExpr FieldExpr::apply_extensor(const ExtensorField& t, const FieldExpr& a, ExtensorAction action) {
  return FieldExpr::from_node(std::make_shared<const Node>(make(ExtensorNode{t, action, a}, a.grades())));
}

FieldExpr FieldExpr::directional(const FieldExpr& x, const Multivector& a) {
  return FieldExpr::from_node(std::make_shared<const Node>(make(DirectionalNode{x, grade_project(a, 1)}, x.grades())));
}

FieldExpr FieldExpr::with_grades(GradeSet g) const {
  Node copy = *node_;
  copy.grades = g;
  return FieldExpr::from_node(std::make_shared<const Node>(std::move(copy)));
}

GradeSet FieldExpr::grades() const { return node_->grades; }

namespace {

FieldExpr binary(BinaryOp op, const FieldExpr& a, const FieldExpr& b) {
  return FieldExpr::from_node(std::make_shared<const FieldExpr::Node>(
      make(BinaryNode{op, a, b}, product_grades(a.grades(), b.grades(), op))));
}

FieldExpr unary(UnaryOp op, const FieldExpr& a, int arg, GradeSet g) {
  return FieldExpr::from_node(std::make_shared<const FieldExpr::Node>(make(UnaryNode{op, a, arg}, g)));
}

FieldExpr func(ScalarFunc f, const FieldExpr& a, int n) {
  return FieldExpr::from_node(std::make_shared<const FieldExpr::Node>(make(FuncNode{f, a, n}, GradeSet{0})));
}

}  // namespace

ExtensorField ExtensorField::constant(const Extensor11& t) {
  std::array<FieldExpr, 16> entries;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) entries[static_cast<std::size_t>(r * 4 + c)] = FieldExpr::constant(t(r, c));
  }
  ExtensorField f(entries);
  f.constant_ = t;
  return f;
}

ExtensorField ExtensorField::from_rotor(const FieldExpr& rotor) {
  std::array<FieldExpr, 16> entries;
  const FieldExpr rr = reverse(rotor);
  for (int mu = 0; mu < 4; ++mu) {
    const FieldExpr col = rotor * FieldExpr::constant(gamma(mu)) * rr;
    for (int nu = 0; nu < 4; ++nu) {
      entries[static_cast<std::size_t>(nu * 4 + mu)] = scalar_product(col, FieldExpr::constant(gamma_up(nu)));
    }
  }
  ExtensorField f(entries);
  f.rotor_ = rotor;
  return f;
}

FieldExpr del_expr(const FieldExpr& x, DelMode mode) {
  FieldExpr out;
  bool first = true;
  for (int mu = 0; mu < 4; ++mu) {
    const FieldExpr g = FieldExpr::constant(gamma_up(mu));
    const FieldExpr d = FieldExpr::directional(x, gamma(mu));
    FieldExpr term;
    switch (mode) {
      case DelMode::gradient:
        term = g * d;
        break;
      case DelMode::divergence:
        term = left_contraction(g, d);
        break;
      case DelMode::curl:
        term = outer(g, d);
        break;
    }
    out = first ? term : out + term;
    first = false;
  }
  return out;
}

}  // namespace mfl
