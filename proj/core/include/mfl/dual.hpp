#pragma once

// Forward-mode dual numbers used for exact structural differentiation.
//
// Dual<T, N> carries a value and N first partials, all of type T. Nesting
// Dual<Dual<double, 4>, 4> gives exact second partials in the 4 spacetime
// coordinates; Dual<T, 1> is the single-direction variant used for
// multivector derivatives and variations.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace mfl {

template <class T, std::size_t N>
struct Dual;

namespace detail {
template <class T>
struct is_dual : std::false_type {};
template <class T, std::size_t N>
struct is_dual<Dual<T, N>> : std::true_type {};
}  // namespace detail

template <class T>
inline constexpr bool is_dual_v = detail::is_dual<T>::value;

template <class T, std::size_t N>
struct Dual {
  using value_type = T;
  static constexpr std::size_t size = N;

  T v{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  constexpr Dual(const T& value) : v(value) {}  // NOLINT(implicit)
  template <class U>
    requires(!std::is_same_v<T, double> && std::is_arithmetic_v<U>)
  constexpr Dual(U value) : v(T(static_cast<double>(value))) {}  // NOLINT(implicit)
  constexpr Dual(const T& value, const std::array<T, N>& partials) : v(value), d(partials) {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator*=(double s) {
    v *= s;
    for (auto& x : d) x *= s;
    return *this;
  }

  friend Dual operator-(const Dual& a) {
    Dual r;
    r.v = -a.v;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v * b.v;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1.0) / b.v;
    Dual r;
    r.v = a.v * inv;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
    return r;
  }

  friend Dual operator+(Dual a, double s) {
    a.v += s;
    return a;
  }
  friend Dual operator+(double s, Dual a) { return a + s; }
  friend Dual operator-(Dual a, double s) {
    a.v -= s;
    return a;
  }
  friend Dual operator-(double s, const Dual& a) { return -a + s; }
  friend Dual operator*(Dual a, double s) { return a *= s; }
  friend Dual operator*(double s, Dual a) { return a *= s; }
  friend Dual operator/(Dual a, double s) { return a *= (1.0 / s); }
  friend Dual operator/(double s, const Dual& a) { return Dual(T(s)) / a; }

  friend Dual sin(const Dual& a) {
    using std::cos;
    using std::sin;
    return chain(a, sin(a.v), cos(a.v));
  }
  friend Dual cos(const Dual& a) {
    using std::cos;
    using std::sin;
    return chain(a, cos(a.v), -sin(a.v));
  }
  friend Dual exp(const Dual& a) {
    using std::exp;
    const T e = exp(a.v);
    return chain(a, e, e);
  }
  friend Dual sinh(const Dual& a) {
    using std::cosh;
    using std::sinh;
    return chain(a, sinh(a.v), cosh(a.v));
  }
  friend Dual cosh(const Dual& a) {
    using std::cosh;
    using std::sinh;
    return chain(a, cosh(a.v), sinh(a.v));
  }
  friend Dual sqrt(const Dual& a) {
    using std::sqrt;
    const T s = sqrt(a.v);
    return chain(a, s, T(0.5) / s);
  }

 private:
  static Dual chain(const Dual& a, const T& value, const T& slope) {
    Dual r;
    r.v = value;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = slope * a.d[i];
    return r;
  }
};

/// Jet<k>: k nested levels of 4-coordinate duals; Jet<0> is double.
namespace detail {
template <int K>
struct jet {
  using type = Dual<typename jet<K - 1>::type, 4>;
};
template <>
struct jet<0> {
  using type = double;
};

template <class T>
struct jet_depth : std::integral_constant<int, 0> {};
template <class T>
struct jet_depth<Dual<T, 4>> : std::integral_constant<int, 1 + jet_depth<T>::value> {};
}  // namespace detail

template <int K>
using Jet = typename detail::jet<K>::type;
using Jet1 = Jet<1>;
using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

template <class T>
inline constexpr int jet_depth_v = detail::jet_depth<T>::value;

/// Highest jet depth any field evaluation may reach.
inline constexpr int kMaxJetDepth = 3;

template <class T>
using Up = Dual<T, 4>;
template <class T>
using Eps = Dual<T, 1>;

/// Innermost double value of a (possibly nested) dual.
template <class T>
constexpr double primal(const T& x) {
  if constexpr (is_dual_v<T>) {
    return primal(x.v);
  } else {
    return static_cast<double>(x);
  }
}

template <class T>
constexpr bool is_exact_zero(const T& x) {
  if constexpr (is_dual_v<T>) {
    if (!is_exact_zero(x.v)) return false;
    for (const auto& di : x.d) {
      if (!is_exact_zero(di)) return false;
    }
    return true;
  } else {
    return x == 0.0;
  }
}

template <class T>
T ipow(const T& x, int n) {
  T r(1.0);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

}  // namespace mfl
