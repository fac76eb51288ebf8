#pragma once

// Dense Cl(1,3) multivectors.
//
// Component index = 4-bit blade mask over the ordered generators
// (gamma_0, gamma_1, gamma_2, gamma_3); bit k set means gamma_k is a factor,
// factors in increasing index order. Metric diag(1,-1,-1,-1).

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mfl/dual.hpp"

namespace mfl {

inline constexpr int kDim = 4;
inline constexpr int kBlades = 16;
inline constexpr std::array<double, 4> kMetric{1.0, -1.0, -1.0, -1.0};

constexpr int blade_grade(unsigned mask) { return std::popcount(mask); }

namespace detail {

constexpr double blade_product_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
  double sign = (swaps % 2) ? -1.0 : 1.0;
  for (unsigned common = a & b; common != 0; common &= common - 1) {
    sign *= kMetric[static_cast<std::size_t>(std::countr_zero(common))];
  }
  return sign;
}

struct ProductTables {
  std::array<std::array<double, kBlades>, kBlades> sign{};
  std::array<double, kBlades> reverse{};
  std::array<double, kBlades> square_norm{};  // e_J ~e_J = prod eta_jj
};

constexpr ProductTables make_tables() {
  ProductTables t{};
  for (unsigned a = 0; a < kBlades; ++a) {
    for (unsigned b = 0; b < kBlades; ++b) t.sign[a][b] = blade_product_sign(a, b);
    const int r = blade_grade(a);
    t.reverse[a] = ((r * (r - 1) / 2) % 2) ? -1.0 : 1.0;
    double s = 1.0;
    for (unsigned m = a; m != 0; m &= m - 1) s *= kMetric[static_cast<std::size_t>(std::countr_zero(m))];
    t.square_norm[a] = s;
  }
  return t;
}

inline constexpr ProductTables kTables = make_tables();

}  // namespace detail

/// Set of grades in {0..4}.
class GradeSet {
 public:
  constexpr GradeSet() = default;
  constexpr GradeSet(std::initializer_list<int> grades) {
    for (int g : grades) insert(g);
  }
  static constexpr GradeSet from_bits(std::uint8_t bits) {
    GradeSet s;
    s.bits_ = static_cast<std::uint8_t>(bits & 0x1F);
    return s;
  }
  static constexpr GradeSet all() { return from_bits(0x1F); }
  static constexpr GradeSet even() { return GradeSet{0, 2, 4}; }
  static constexpr GradeSet odd() { return GradeSet{1, 3}; }

  constexpr void insert(int g) {
    if (g < 0 || g > 4) throw std::out_of_range("grade outside 0..4");
    bits_ = static_cast<std::uint8_t>(bits_ | (1u << g));
  }
  constexpr bool contains(int g) const { return g >= 0 && g <= 4 && ((bits_ >> g) & 1u); }
  constexpr bool contains_blade(unsigned mask) const { return contains(blade_grade(mask)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool subset_of(GradeSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr GradeSet operator|(GradeSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr GradeSet operator&(GradeSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr bool operator==(const GradeSet&) const = default;

  /// Grades shifted by +delta (dropping anything outside 0..4).
  constexpr GradeSet shifted(int delta) const {
    GradeSet r;
    for (int g = 0; g <= 4; ++g) {
      if (contains(g) && g + delta >= 0 && g + delta <= 4) r.insert(g + delta);
    }
    return r;
  }

  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

template <class T>
class BasicMultivector {
 public:
  using scalar_type = T;

  BasicMultivector() { c_.fill(T(0.0)); }
  explicit BasicMultivector(const T& scalar) : BasicMultivector() { c_[0] = scalar; }

  static BasicMultivector blade(unsigned mask, const T& coeff = T(1.0)) {
    BasicMultivector m;
    m.c_[mask] = coeff;
    return m;
  }
  /// gamma_mu (lower index).
  static BasicMultivector basis_vector(int mu) { return blade(1u << mu); }
  /// gamma^mu = eta^{mu mu} gamma_mu.
  static BasicMultivector reciprocal_vector(int mu) { return blade(1u << mu, T(kMetric[static_cast<std::size_t>(mu)])); }
  static BasicMultivector vector(const std::array<T, 4>& coords) {
    BasicMultivector m;
    for (int mu = 0; mu < 4; ++mu) m.c_[1u << mu] = coords[static_cast<std::size_t>(mu)];
    return m;
  }
  static BasicMultivector pseudoscalar() { return blade(0xF); }

  T& operator[](unsigned mask) { return c_[mask]; }
  const T& operator[](unsigned mask) const { return c_[mask]; }
  const std::array<T, kBlades>& components() const { return c_; }

  T scalar() const { return c_[0]; }

  BasicMultivector& operator+=(const BasicMultivector& o) {
    for (unsigned i = 0; i < kBlades; ++i) c_[i] += o.c_[i];
    return *this;
  }
  BasicMultivector& operator-=(const BasicMultivector& o) {
    for (unsigned i = 0; i < kBlades; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BasicMultivector& operator*=(double s) {
    for (auto& x : c_) x = x * s;
    return *this;
  }

  friend BasicMultivector operator+(BasicMultivector a, const BasicMultivector& b) { return a += b; }
  friend BasicMultivector operator-(BasicMultivector a, const BasicMultivector& b) { return a -= b; }
  friend BasicMultivector operator-(const BasicMultivector& a) {
    BasicMultivector r;
    for (unsigned i = 0; i < kBlades; ++i) r.c_[i] = -a.c_[i];
    return r;
  }
  friend BasicMultivector operator*(BasicMultivector a, double s) { return a *= s; }
  friend BasicMultivector operator*(double s, BasicMultivector a) { return a *= s; }
  friend BasicMultivector operator/(BasicMultivector a, double s) { return a *= (1.0 / s); }

  /// Scaling by a scalar of the component type.
  friend BasicMultivector scale(const T& s, const BasicMultivector& a) {
    BasicMultivector r;
    for (unsigned i = 0; i < kBlades; ++i) r.c_[i] = s * a.c_[i];
    return r;
  }

  /// Geometric product.
  friend BasicMultivector operator*(const BasicMultivector& a, const BasicMultivector& b) {
    return product_impl(a, b, [](unsigned, unsigned) { return true; });
  }

  friend BasicMultivector outer(const BasicMultivector& a, const BasicMultivector& b) {
    return product_impl(a, b, [](unsigned x, unsigned y) { return (x & y) == 0; });
  }

  friend BasicMultivector left_contraction(const BasicMultivector& a, const BasicMultivector& b) {
    return product_impl(a, b, [](unsigned x, unsigned y) { return (x & y) == x; });
  }

  /// X . Y = <X ~Y>_0.
  friend T scalar_product(const BasicMultivector& a, const BasicMultivector& b) {
    T s(0.0);
    for (unsigned i = 0; i < kBlades; ++i) {
      if (is_exact_zero(a.c_[i]) || is_exact_zero(b.c_[i])) continue;
      s += (a.c_[i] * b.c_[i]) * detail::kTables.square_norm[i];
    }
    return s;
  }

  /// X x Y = (XY - YX)/2.
  friend BasicMultivector commutator(const BasicMultivector& a, const BasicMultivector& b) {
    return (a * b - b * a) * 0.5;
  }

  friend BasicMultivector reverse(const BasicMultivector& a) {
    BasicMultivector r;
    for (unsigned i = 0; i < kBlades; ++i) r.c_[i] = a.c_[i] * detail::kTables.reverse[i];
    return r;
  }

  friend BasicMultivector grade_project(const BasicMultivector& a, int r) {
    if (r < 0 || r > 4) throw std::out_of_range("grade_project: grade outside 0..4");
    BasicMultivector out;
    for (unsigned i = 0; i < kBlades; ++i) {
      if (blade_grade(i) == r) out.c_[i] = a.c_[i];
    }
    return out;
  }

  friend BasicMultivector grade_restrict(const BasicMultivector& a, GradeSet g) {
    BasicMultivector out;
    for (unsigned i = 0; i < kBlades; ++i) {
      if (g.contains_blade(i)) out.c_[i] = a.c_[i];
    }
    return out;
  }

 private:
  template <class Keep>
  static BasicMultivector product_impl(const BasicMultivector& a, const BasicMultivector& b, Keep keep) {
    std::array<bool, kBlades> nza{};
    std::array<bool, kBlades> nzb{};
    for (unsigned i = 0; i < kBlades; ++i) {
      nza[i] = !is_exact_zero(a.c_[i]);
      nzb[i] = !is_exact_zero(b.c_[i]);
    }
    BasicMultivector r;
    for (unsigned i = 0; i < kBlades; ++i) {
      if (!nza[i]) continue;
      for (unsigned j = 0; j < kBlades; ++j) {
        if (!nzb[j] || !keep(i, j)) continue;
        r.c_[i ^ j] += (a.c_[i] * b.c_[j]) * detail::kTables.sign[i][j];
      }
    }
    return r;
  }

  std::array<T, kBlades> c_;
};

using Multivector = BasicMultivector<double>;

/// Reciprocal blade e^J (e^J . e_J = 1).
inline Multivector reciprocal_blade(unsigned mask) { return Multivector::blade(mask, detail::kTables.square_norm[mask]); }
inline double blade_square_norm(unsigned mask) { return detail::kTables.square_norm[mask]; }

/// Grades with a nonzero component (|c| > tol).
GradeSet grade_set(const Multivector& x, double tol = 0.0);

/// Euclidean norm of the component vector.
double norm(const Multivector& x);
double max_abs(const Multivector& x);

bool operator==(const Multivector& a, const Multivector& b);

std::ostream& operator<<(std::ostream& os, const Multivector& x);
std::string blade_name(unsigned mask);

/// The pseudoscalar i = gamma_0 gamma_1 gamma_2 gamma_3.
inline Multivector pseudoscalar() { return Multivector::pseudoscalar(); }
inline Multivector gamma(int mu) { return Multivector::basis_vector(mu); }
inline Multivector gamma_up(int mu) { return Multivector::reciprocal_vector(mu); }

// Jet helpers: value / partial extraction and lifting for multivectors of duals.

template <class T, std::size_t N>
BasicMultivector<T> value_part(const BasicMultivector<Dual<T, N>>& x) {
  BasicMultivector<T> r;
  for (unsigned i = 0; i < kBlades; ++i) r[i] = x[i].v;
  return r;
}

template <class T, std::size_t N>
BasicMultivector<T> partial_part(const BasicMultivector<Dual<T, N>>& x, std::size_t k) {
  BasicMultivector<T> r;
  for (unsigned i = 0; i < kBlades; ++i) r[i] = x[i].d[k];
  return r;
}

template <class U, class T>
BasicMultivector<U> lift(const BasicMultivector<T>& x) {
  if constexpr (std::is_same_v<U, T>) {
    return x;
  } else {
    BasicMultivector<U> r;
    for (unsigned i = 0; i < kBlades; ++i) r[i] = U(x[i]);
    return r;
  }
}

/// Lift a double multivector into any scalar type (constant, no derivatives).
template <class T>
BasicMultivector<T> constant_as(const Multivector& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    BasicMultivector<T> r;
    for (unsigned i = 0; i < kBlades; ++i) r[i] = T(x[i]);
    return r;
  }
}

template <class T>
Multivector primal_part(const BasicMultivector<T>& x) {
  Multivector r;
  for (unsigned i = 0; i < kBlades; ++i) r[i] = primal(x[i]);
  return r;
}

}  // namespace mfl
