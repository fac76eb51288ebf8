#pragma once

// Gauge backgrounds (h, Omega), covariant and spinor derivatives, and the
// gauge appendix identities.
//
// D_a X   = a.del X + Omega(a) x X
// D^s_a p = a.del p + (1/2) Omega(a) p
// D* X    = sum_mu h*(gamma^mu) * D_mu X            (omega construction)
// D_| A   = det(h)^-1 h[del_|(det(h) h^-1 A)]        (pushforward construction)
// D^ A    = h*[del ^ h^dagger A]
// with h* = (h^-1)^dagger and D = D_| + D^ in both constructions.

#include <array>
#include <span>

#include "mfl/calculus.hpp"
#include "mfl/extensor.hpp"
#include "mfl/field.hpp"

namespace mfl {

enum class Construction { omega, pushforward };

const char* to_string(Construction c);

template <class T>
struct GaugeSample {
  BasicExtensor<T> h;
  BasicExtensor<T> h_inv;
  BasicExtensor<T> h_star;
  T det;
  /// Omega(gamma_mu).
  std::array<BasicMultivector<T>, 4> omega;

  BasicMultivector<T> connection(const Multivector& a) const {
    BasicMultivector<T> r;
    for (int mu = 0; mu < 4; ++mu) {
      const double c = a[1u << mu];
      if (c != 0.0) r += omega[static_cast<std::size_t>(mu)] * c;
    }
    return r;
  }
};

struct GaugeBackground {
  ExtensorField h = ExtensorField::identity();
  std::array<FieldExpr, 4> omega{};
  /// (h, Omega) induced by a rotor, so both constructions coincide.
  bool compatible = false;

  static GaugeBackground flat() {
    GaugeBackground bg;
    bg.compatible = true;
    return bg;
  }

  /// h, h^-1, h*, det(h) and Omega at x. Throws SingularExtensorError below the gate.
  template <class T>
  GaugeSample<T> sample(const BasicMultivector<T>& x) const {
    GaugeSample<T> s;
    s.h = h.eval(x);
    s.det = s.h.determinant();
    s.h_inv = s.h.inverse();
    s.h_star = s.h_inv.adjoint();
    for (std::size_t mu = 0; mu < 4; ++mu) s.omega[mu] = omega[mu].eval(x);
    return s;
  }
  GaugeSample<double> sample(const PositionForm& p) const { return sample<double>(p.form()); }
};

/// Background with h(a) = R a R~ and Omega(gamma_mu) = <-2 (d_mu R) R~>_2.
/// Throws InvalidParameterError if R R~ deviates from 1 beyond 1e-10 at any check point.
GaugeBackground rotor_gauge(const FieldExpr& rotor, std::span<const PositionForm> check_points);

template <class T>
BasicExtensor<T> extensor_value(const BasicExtensor<Up<T>>& t) {
  typename BasicExtensor<T>::Matrix m;
  for (std::size_t i = 0; i < 16; ++i) m[i] = t.matrix()[i].v;
  return BasicExtensor<T>(m);
}

/// D_mu Z from a jet value of Z and the background sample at the same point.
template <class T>
BasicMultivector<T> covariant_partial(const BasicMultivector<Up<T>>& z, const GaugeSample<T>& s, int mu) {
  return partial_part(z, static_cast<std::size_t>(mu)) + commutator(s.omega[static_cast<std::size_t>(mu)], value_part(z));
}

template <class T>
BasicMultivector<T> spinor_partial(const BasicMultivector<Up<T>>& z, const GaugeSample<T>& s, int mu) {
  return partial_part(z, static_cast<std::size_t>(mu)) + (s.omega[static_cast<std::size_t>(mu)] * value_part(z)) * 0.5;
}

/// D* Z at a point: z is the jet of the field at the point, x the position seeded at level T.
template <class T>
BasicMultivector<T> gauge_del_jet(const BasicMultivector<Up<T>>& z, const BasicMultivector<T>& x,
                                  const GaugeBackground& bg, DelMode mode, Construction c) {
  if (c == Construction::omega) {
    const auto s = bg.sample(x);
    BasicMultivector<T> out;
    for (int mu = 0; mu < 4; ++mu) {
      out += mode_product(s.h_star.apply(constant_as<T>(gamma_up(mu))), covariant_partial(z, s, mu), mode);
    }
    return out;
  }
  const auto h_up = bg.h.eval(raise_point(x));
  const auto h = extensor_value(h_up);
  BasicMultivector<T> out;
  if (mode != DelMode::curl) {
    const auto det_up = h_up.determinant();
    const auto inner = scale(det_up, h_up.inverse().extend(z));
    out += scale(T(1.0) / h.determinant(), h.extend(del_jet<T>(inner, DelMode::divergence)));
  }
  if (mode != DelMode::divergence) {
    const auto inner = h_up.adjoint().extend(z);
    out += h.gauge_star().extend(del_jet<T>(inner, DelMode::curl));
  }
  return out;
}

/// D^s Z = sum_mu h*(gamma^mu) D^s_mu Z (no parity check: used on odd momenta too).
template <class T>
BasicMultivector<T> spinor_del_jet(const BasicMultivector<Up<T>>& z, const BasicMultivector<T>& x,
                                   const GaugeBackground& bg) {
  const auto s = bg.sample(x);
  BasicMultivector<T> out;
  for (int mu = 0; mu < 4; ++mu) out += s.h_star.apply(constant_as<T>(gamma_up(mu))) * spinor_partial(z, s, mu);
  return out;
}

Multivector covariant_directional(const FieldExpr& x, const Multivector& a, const PositionForm& p,
                                  const GaugeBackground& bg);

/// Throws GradeError unless psi is declared even.
Multivector spinor_directional(const FieldExpr& psi, const Multivector& a, const PositionForm& p,
                               const GaugeBackground& bg);

Multivector gauge_del(const FieldExpr& x, DelMode mode, const PositionForm& p, const GaugeBackground& bg,
                      Construction c);

/// Spinor gradient D^s psi. Throws GradeError unless psi is declared even.
Multivector spinor_del(const FieldExpr& psi, const PositionForm& p, const GaugeBackground& bg);

/// max over points of |(D*X).Y + X.(D*'Y) - det(h)^-1 del.w|, w = det(h) sum_mu gamma^mu[(h*(gamma_mu) * X).Y].
double check_identity_gauge(const FieldExpr& x, const FieldExpr& y, DelMode mode, const GaugeBackground& bg,
                            Construction c, std::span<const PositionForm> points);

struct SpinorIdentityResult {
  /// (D^s psi).phi + psi.(D^s phi) - (D psi).phi - psi.(D phi).
  double commuted = 0.0;
  /// (D^s psi).phi + psi.(D^s phi) - det(h)^-1 del.w.
  double divergence = 0.0;
};

/// Throws GradeError unless psi is declared even. phi may carry any grades: with phi even
/// every term pairs odd with even and both residuals vanish identically.
SpinorIdentityResult check_identity_spinor(const FieldExpr& psi, const FieldExpr& phi, const GaugeBackground& bg,
                                           std::span<const PositionForm> points);

/// max over points of the omega/pushforward discrepancy of D_| X and D^ X.
double check_constructions_agree(const FieldExpr& x, const GaugeBackground& bg, std::span<const PositionForm> points);

/// max over points of |D psi - D^s psi + (1/2) sum_mu h*(gamma^mu) psi Omega(gamma_mu)|.
double check_spinor_split(const FieldExpr& psi, const GaugeBackground& bg, std::span<const PositionForm> points);

}  // namespace mfl
