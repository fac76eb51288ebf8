#pragma once

// (1,1)-extensors on 1-forms and their outermorphism extension.

#include <array>
#include <cmath>
#include <string>

#include "mfl/errors.hpp"
#include "mfl/multivector.hpp"

namespace mfl {

/// |det| at or below this is treated as singular.
inline constexpr double kInvertibilityGate = 1e-9;

/// Linear map on 1-forms. Entry (nu, mu) is the gamma_nu coefficient of t(gamma_mu).
template <class T>
class BasicExtensor {
 public:
  using Matrix = std::array<T, 16>;

  BasicExtensor() { m_.fill(T(0.0)); }
  explicit BasicExtensor(const Matrix& m) : m_(m) {}

  static BasicExtensor identity() { return scaled(1.0); }
  static BasicExtensor scaled(double lambda) {
    BasicExtensor t;
    for (int i = 0; i < 4; ++i) t(i, i) = T(lambda);
    return t;
  }
  /// Extensor with t(gamma_mu) = columns[mu] (grade-1 parts used).
  static BasicExtensor from_columns(const std::array<BasicMultivector<T>, 4>& columns) {
    BasicExtensor t;
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) t(nu, mu) = columns[static_cast<std::size_t>(mu)][1u << nu];
    }
    return t;
  }

  T& operator()(int row, int col) { return m_[static_cast<std::size_t>(row * 4 + col)]; }
  const T& operator()(int row, int col) const { return m_[static_cast<std::size_t>(row * 4 + col)]; }
  const Matrix& matrix() const { return m_; }

  /// t(gamma_mu).
  BasicMultivector<T> column(int mu) const {
    BasicMultivector<T> v;
    for (int nu = 0; nu < 4; ++nu) v[1u << nu] = (*this)(nu, mu);
    return v;
  }

  /// Action on the grade-1 part of a.
  BasicMultivector<T> apply(const BasicMultivector<T>& a) const {
    BasicMultivector<T> v;
    for (int nu = 0; nu < 4; ++nu) {
      T s(0.0);
      for (int mu = 0; mu < 4; ++mu) s += (*this)(nu, mu) * a[1u << mu];
      v[1u << nu] = s;
    }
    return v;
  }

  /// t^dagger, defined by t(a).b = a.t^dagger(b); matrix eta m^T eta.
  BasicExtensor adjoint() const {
    BasicExtensor r;
    for (int nu = 0; nu < 4; ++nu) {
      for (int mu = 0; mu < 4; ++mu) {
        r(nu, mu) = (*this)(mu, nu) * (kMetric[static_cast<std::size_t>(nu)] * kMetric[static_cast<std::size_t>(mu)]);
      }
    }
    return r;
  }

  /// Images of all 16 basis blades under the outermorphism.
  std::array<BasicMultivector<T>, kBlades> blade_images() const {
    std::array<BasicMultivector<T>, kBlades> img;
    img[0] = BasicMultivector<T>(T(1.0));
    for (unsigned mask = 1; mask < kBlades; ++mask) {
      const int low = std::countr_zero(mask);
      img[mask] = outer(column(low), img[mask & (mask - 1)]);
    }
    return img;
  }

  /// Outermorphism: t(A ^ B) = t(A) ^ t(B), identity on scalars.
  BasicMultivector<T> extend(const BasicMultivector<T>& x) const {
    const auto img = blade_images();
    BasicMultivector<T> out;
    for (unsigned mask = 0; mask < kBlades; ++mask) {
      if (is_exact_zero(x[mask])) continue;
      out += scale(x[mask], img[mask]);
    }
    return out;
  }

  /// det(t) read off t(i) = det(t) i.
  T determinant() const {
    const auto w = outer(outer(column(0), column(1)), outer(column(2), column(3)));
    return w[0xF];
  }

  /// Inverse via the adjugate. Throws SingularExtensorError below the gate.
  BasicExtensor inverse() const {
    const T det = determinant();
    if (std::abs(primal(det)) <= kInvertibilityGate) {
      throw SingularExtensorError("extensor is singular: |det| = " + std::to_string(std::abs(primal(det))));
    }
    const auto& a = *this;
    const T s0 = a(0, 0) * a(1, 1) - a(1, 0) * a(0, 1);
    const T s1 = a(0, 0) * a(1, 2) - a(1, 0) * a(0, 2);
    const T s2 = a(0, 0) * a(1, 3) - a(1, 0) * a(0, 3);
    const T s3 = a(0, 1) * a(1, 2) - a(1, 1) * a(0, 2);
    const T s4 = a(0, 1) * a(1, 3) - a(1, 1) * a(0, 3);
    const T s5 = a(0, 2) * a(1, 3) - a(1, 2) * a(0, 3);
    const T c5 = a(2, 2) * a(3, 3) - a(3, 2) * a(2, 3);
    const T c4 = a(2, 1) * a(3, 3) - a(3, 1) * a(2, 3);
    const T c3 = a(2, 1) * a(3, 2) - a(3, 1) * a(2, 2);
    const T c2 = a(2, 0) * a(3, 3) - a(3, 0) * a(2, 3);
    const T c1 = a(2, 0) * a(3, 2) - a(3, 0) * a(2, 2);
    const T c0 = a(2, 0) * a(3, 1) - a(3, 0) * a(2, 1);
    const T inv_det = T(1.0) / det;
    BasicExtensor b;
    b(0, 0) = (a(1, 1) * c5 - a(1, 2) * c4 + a(1, 3) * c3) * inv_det;
    b(0, 1) = (-a(0, 1) * c5 + a(0, 2) * c4 - a(0, 3) * c3) * inv_det;
    b(0, 2) = (a(3, 1) * s5 - a(3, 2) * s4 + a(3, 3) * s3) * inv_det;
    b(0, 3) = (-a(2, 1) * s5 + a(2, 2) * s4 - a(2, 3) * s3) * inv_det;
    b(1, 0) = (-a(1, 0) * c5 + a(1, 2) * c2 - a(1, 3) * c1) * inv_det;
    b(1, 1) = (a(0, 0) * c5 - a(0, 2) * c2 + a(0, 3) * c1) * inv_det;
    b(1, 2) = (-a(3, 0) * s5 + a(3, 2) * s2 - a(3, 3) * s1) * inv_det;
    b(1, 3) = (a(2, 0) * s5 - a(2, 2) * s2 + a(2, 3) * s1) * inv_det;
    b(2, 0) = (a(1, 0) * c4 - a(1, 1) * c2 + a(1, 3) * c0) * inv_det;
    b(2, 1) = (-a(0, 0) * c4 + a(0, 1) * c2 - a(0, 3) * c0) * inv_det;
    b(2, 2) = (a(3, 0) * s4 - a(3, 1) * s2 + a(3, 3) * s0) * inv_det;
    b(2, 3) = (-a(2, 0) * s4 + a(2, 1) * s2 - a(2, 3) * s0) * inv_det;
    b(3, 0) = (-a(1, 0) * c3 + a(1, 1) * c1 - a(1, 2) * c0) * inv_det;
    b(3, 1) = (a(0, 0) * c3 - a(0, 1) * c1 + a(0, 2) * c0) * inv_det;
    b(3, 2) = (-a(3, 0) * s3 + a(3, 1) * s1 - a(3, 2) * s0) * inv_det;
    b(3, 3) = (a(2, 0) * s3 - a(2, 1) * s1 + a(2, 2) * s0) * inv_det;
    return b;
  }

  /// h* = (h^-1)^dagger.
  BasicExtensor gauge_star() const { return inverse().adjoint(); }

  /// (s o t)(a) = s(t(a)).
  friend BasicExtensor compose(const BasicExtensor& s, const BasicExtensor& t) {
    BasicExtensor r;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        T acc(0.0);
        for (int k = 0; k < 4; ++k) acc += s(i, k) * t(k, j);
        r(i, j) = acc;
      }
    }
    return r;
  }

 private:
  Matrix m_;
};

using Extensor11 = BasicExtensor<double>;

/// The outermorphism of an Extensor11 as a dense 16x16 map (block diagonal by grade).
class ExtendedExtensor {
 public:
  explicit ExtendedExtensor(const Extensor11& t);

  Multivector operator()(const Multivector& x) const;
  /// Entry (row J, column K): e_J coefficient of t(e_K).
  double entry(unsigned row, unsigned col) const { return m_[row][col]; }

 private:
  std::array<std::array<double, kBlades>, kBlades> m_{};
};

inline Multivector apply(const Extensor11& t, const Multivector& a) { return t.apply(a); }
inline Extensor11 adjoint(const Extensor11& t) { return t.adjoint(); }
inline Multivector extend(const Extensor11& t, const Multivector& x) { return t.extend(x); }
inline double determinant(const Extensor11& t) { return t.determinant(); }
inline Extensor11 invert(const Extensor11& t) { return t.inverse(); }

/// Determinant of the 4x4 matrix by LU (independent of the outermorphism route).
double matrix_determinant(const Extensor11& t);

/// h* computed both as (h^-1)^dagger and (h^dagger)^-1; throws if they disagree beyond tol.
Extensor11 gauge_star(const Extensor11& h, double agreement_tol = 1e-10);

/// Determinant by both routes; throws std::logic_error if they disagree beyond tol (relative).
double checked_determinant(const Extensor11& t, double tol = 1e-10);

double max_abs_difference(const Extensor11& a, const Extensor11& b);

}  // namespace mfl
