#include "mfl/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfl/errors.hpp"

namespace mfl {

namespace {

void require_even(const FieldExpr& f, const char* what) {
  if (!f.grades().subset_of(GradeSet::even())) {
    throw GradeError(std::string(what) + ": field must be even-grade, has grades " + f.grades().to_string());
  }
}

/// w = det(h) sum_mu gamma^mu [(h*(gamma_mu) * X) . Y], carried at Jet1 so del.w is exact.
BasicMultivector<Jet1> gauge_current(const BasicMultivector<Jet1>& xj, const BasicMultivector<Jet1>& yj,
                                     const GaugeSample<Jet1>& s, DelMode mode) {
  BasicMultivector<Jet1> w;
  for (int mu = 0; mu < 4; ++mu) {
    const auto a = s.h_star.apply(constant_as<Jet1>(gamma(mu)));
    w += scale(scalar_product(mode_product(a, xj, mode), yj), constant_as<Jet1>(gamma_up(mu)));
  }
  return scale(s.det, w);
}

}  // namespace

const char* to_string(Construction c) { return c == Construction::omega ? "omega" : "pushforward"; }

GaugeBackground rotor_gauge(const FieldExpr& rotor, std::span<const PositionForm> check_points) {
  const FieldExpr rr = reverse(rotor);
  for (const auto& p : check_points) {
    const Multivector n = rotor(p) * rr(p);
    Multivector off = n;
    off[0] -= 1.0;
    if (max_abs(off) > 1e-10) {
      throw InvalidParameterError("rotor_gauge: R R~ differs from 1 by " + std::to_string(max_abs(off)));
    }
  }
  GaugeBackground bg;
  bg.h = ExtensorField::from_rotor(rotor);
  for (int mu = 0; mu < 4; ++mu) {
    bg.omega[static_cast<std::size_t>(mu)] =
        grade_project(-2.0 * (FieldExpr::directional(rotor, gamma(mu)) * rr), 2);
  }
  bg.compatible = true;
  return bg;
}

Multivector covariant_directional(const FieldExpr& x, const Multivector& a, const PositionForm& p,
                                  const GaugeBackground& bg) {
  const auto s = bg.sample(p);
  return directional_derivative(x, a, p) + commutator(s.connection(a), x(p));
}

Multivector spinor_directional(const FieldExpr& psi, const Multivector& a, const PositionForm& p,
                               const GaugeBackground& bg) {
  require_even(psi, "spinor_directional");
  const auto s = bg.sample(p);
  return directional_derivative(psi, a, p) + (s.connection(a) * psi(p)) * 0.5;
}

Multivector gauge_del(const FieldExpr& x, DelMode mode, const PositionForm& p, const GaugeBackground& bg,
                      Construction c) {
  return gauge_del_jet<double>(x.eval(seeded_position<Jet1>(p)), p.form(), bg, mode, c);
}

Multivector spinor_del(const FieldExpr& psi, const PositionForm& p, const GaugeBackground& bg) {
  require_even(psi, "spinor_del");
  return spinor_del_jet<double>(psi.eval(seeded_position<Jet1>(p)), p.form(), bg);
}

double check_identity_gauge(const FieldExpr& x, const FieldExpr& y, DelMode mode, const GaugeBackground& bg,
                            Construction c, std::span<const PositionForm> points) {
  double worst = 0.0;
  for (const auto& p : points) {
    const auto x0 = p.form();
    const auto x1 = seeded_position<Jet1>(p);
    const auto xj = x.eval(x1);
    const auto yj = y.eval(x1);
    const double lhs = scalar_product(gauge_del_jet<double>(xj, x0, bg, mode, c), value_part(yj)) +
                       scalar_product(value_part(xj), gauge_del_jet<double>(yj, x0, bg, dual_mode(mode), c));
    const auto s1 = bg.sample(x1);
    const auto w = gauge_current(xj, yj, s1, mode);
    const double rhs = del_jet<double>(w, DelMode::divergence).scalar() / primal(s1.det);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

SpinorIdentityResult check_identity_spinor(const FieldExpr& psi, const FieldExpr& phi, const GaugeBackground& bg,
                                           std::span<const PositionForm> points) {
  require_even(psi, "check_identity_spinor");
  SpinorIdentityResult r;
  for (const auto& p : points) {
    const auto x0 = p.form();
    const auto x1 = seeded_position<Jet1>(p);
    const auto pj = psi.eval(x1);
    const auto fj = phi.eval(x1);
    const auto pv = value_part(pj);
    const auto fv = value_part(fj);
    const double spinor = scalar_product(spinor_del_jet<double>(pj, x0, bg), fv) +
                          scalar_product(pv, spinor_del_jet<double>(fj, x0, bg));
    const double covariant =
        scalar_product(gauge_del_jet<double>(pj, x0, bg, DelMode::gradient, Construction::omega), fv) +
        scalar_product(pv, gauge_del_jet<double>(fj, x0, bg, DelMode::gradient, Construction::omega));
    r.commuted = std::max(r.commuted, std::abs(spinor - covariant));

    const auto s1 = bg.sample(x1);
    const auto w = gauge_current(pj, fj, s1, DelMode::gradient);
    const double div = del_jet<double>(w, DelMode::divergence).scalar() / primal(s1.det);
    r.divergence = std::max(r.divergence, std::abs(spinor - div));
  }
  return r;
}

double check_constructions_agree(const FieldExpr& x, const GaugeBackground& bg, std::span<const PositionForm> points) {
  double worst = 0.0;
  for (const auto& p : points) {
    const auto xj = x.eval(seeded_position<Jet1>(p));
    const auto x0 = p.form();
    for (const DelMode m : {DelMode::divergence, DelMode::curl}) {
      const auto a = gauge_del_jet<double>(xj, x0, bg, m, Construction::omega);
      const auto b = gauge_del_jet<double>(xj, x0, bg, m, Construction::pushforward);
      worst = std::max(worst, max_abs(a - b));
    }
  }
  return worst;
}

double check_spinor_split(const FieldExpr& psi, const GaugeBackground& bg, std::span<const PositionForm> points) {
  require_even(psi, "check_spinor_split");
  double worst = 0.0;
  for (const auto& p : points) {
    const auto pj = psi.eval(seeded_position<Jet1>(p));
    const auto x0 = p.form();
    const auto s = bg.sample(x0);
    const auto pv = value_part(pj);
    Multivector r = gauge_del_jet<double>(pj, x0, bg, DelMode::gradient, Construction::omega) -
                    spinor_del_jet<double>(pj, x0, bg);
    for (int mu = 0; mu < 4; ++mu) {
      r += (s.h_star.apply(gamma_up(mu)) * pv * s.omega[static_cast<std::size_t>(mu)]) * 0.5;
    }
    worst = std::max(worst, max_abs(r));
  }
  return worst;
}

}  // namespace mfl
