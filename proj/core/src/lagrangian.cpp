#include "mfl/lagrangian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "mfl/errors.hpp"

namespace mfl {

ModeFamily family(DerivativeMode m) {
  switch (m) {
    case DerivativeMode::flat_contraction:
    case DerivativeMode::flat_outer:
    case DerivativeMode::flat_clifford:
      return ModeFamily::flat;
    case DerivativeMode::gauge_contraction:
    case DerivativeMode::gauge_outer:
    case DerivativeMode::gauge_clifford:
      return ModeFamily::gauge;
    case DerivativeMode::spinor:
      return ModeFamily::spinor;
  }
  return ModeFamily::flat;
}

DelMode del_mode(DerivativeMode m) {
  switch (m) {
    case DerivativeMode::flat_contraction:
    case DerivativeMode::gauge_contraction:
      return DelMode::divergence;
    case DerivativeMode::flat_outer:
    case DerivativeMode::gauge_outer:
      return DelMode::curl;
    default:
      return DelMode::gradient;
  }
}

const char* to_string(DerivativeMode m) {
  switch (m) {
    case DerivativeMode::flat_contraction:
      return "flat-contraction";
    case DerivativeMode::flat_outer:
      return "flat-outer";
    case DerivativeMode::flat_clifford:
      return "flat-clifford";
    case DerivativeMode::gauge_contraction:
      return "gauge-contraction";
    case DerivativeMode::gauge_outer:
      return "gauge-outer";
    case DerivativeMode::gauge_clifford:
      return "gauge-clifford";
    case DerivativeMode::spinor:
      return "spinor";
  }
  return "?";
}

void PhysicalParams::validate() const {
  for (const double v : {mu0, e, m, c, hbar}) {
    if (!std::isfinite(v)) throw InvalidParameterError("physical parameters must be finite");
  }
  if (mu0 <= 0.0) throw InvalidParameterError("mu0 must be positive");
  if (c <= 0.0) throw InvalidParameterError("c must be positive");
  if (hbar <= 0.0) throw InvalidParameterError("hbar must be positive");
  if (m < 0.0) throw InvalidParameterError("m must be non-negative");
}

Multivector sigma3() { return gamma(3) * gamma(0); }

namespace {

template <class S>
using scalar_of = typename std::remove_cvref_t<S>::element_type::scalar_type;

ScalarFn maxwell_density(const PhysicalParams& p) {
  const double k = -1.0 / (2.0 * p.mu0);
  return ScalarFn::from(
      [k](auto s) {
        return scalar_product(s[1], s[1]) * k - scalar_product(s[0], s[2]);
      },
      4);
}

ScalarFn dirac_density(const PhysicalParams& p) {
  const Multivector i_gamma3 = pseudoscalar() * gamma(3);
  const double hbar = p.hbar;
  const double e = p.e;
  const double mc = p.m * p.c;
  return ScalarFn::from(
      [=](auto s) {
        using T = scalar_of<decltype(s)>;
        const auto ig3 = constant_as<T>(i_gamma3);
        const auto g0 = constant_as<T>(gamma(0));
        return scalar_product(s[1] * ig3, s[0]) * hbar - scalar_product(s[3] * s[0] * g0, s[0]) * e -
               scalar_product(s[0], s[0]) * mc;
      },
      4);
}

const GaugeBackground& flat_background() {
  static const GaugeBackground bg = GaugeBackground::flat();
  return bg;
}

GradeSet aggregate_grades(const LagrangianSpec& L, GradeSet gx) { return del_grades(gx, del_mode(L.mode)); }

/// The derivative aggregate (del* X, D* X or D^s X) from the jet of X.
template <class T>
BasicMultivector<T> aggregate(const LagrangianSpec& L, const BasicMultivector<Up<T>>& z, const BasicMultivector<T>& x,
                              const GaugeBackground& bg) {
  switch (family(L.mode)) {
    case ModeFamily::flat:
      return del_jet<T>(z, del_mode(L.mode));
    case ModeFamily::gauge:
      return gauge_del_jet<T>(z, x, bg, del_mode(L.mode), L.construction);
    case ModeFamily::spinor:
      return spinor_del_jet<T>(z, x, bg);
  }
  return {};
}

/// The paired operator applied to the momentum: del*', D*' or D^s.
template <class T>
BasicMultivector<T> dual_aggregate(const LagrangianSpec& L, const BasicMultivector<Up<T>>& z,
                                   const BasicMultivector<T>& x, const GaugeBackground& bg) {
  const DelMode dm = dual_mode(del_mode(L.mode));
  switch (family(L.mode)) {
    case ModeFamily::flat:
      return del_jet<T>(z, dm);
    case ModeFamily::gauge:
      return gauge_del_jet<T>(z, x, bg, dm, L.construction);
    case ModeFamily::spinor:
      return spinor_del_jet<T>(z, x, bg);
  }
  return {};
}

const GaugeBackground& effective_background(const LagrangianSpec& L, const GaugeBackground& bg) {
  return family(L.mode) == ModeFamily::flat ? flat_background() : bg;
}

void check_field(const LagrangianSpec& L, const FieldExpr& x) {
  if (family(L.mode) == ModeFamily::spinor && !x.grades().subset_of(GradeSet::even())) {
    throw GradeError("spinor-mode field must be even-grade, has grades " + x.grades().to_string());
  }
}

/// Momentum P = d_d l at Jet1 together with the value-level slots.
struct Momentum {
  BasicMultivector<Jet1> p;
  std::array<Multivector, 4> slots;
};

Momentum momentum(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& pt, const GaugeBackground& bg) {
  if (!L.density.structural()) {
    throw std::logic_error("Euler-Lagrange residuals need a structurally differentiable density");
  }
  const auto x1 = seeded_position<Jet1>(pt);
  const auto z2 = x.eval(seeded_position<Jet2>(pt));
  std::array<BasicMultivector<Jet1>, 4> s1{value_part(z2), aggregate<Jet1>(L, z2, x1, bg), L.current.eval(x1),
                                           L.potential.eval(x1)};
  Momentum m;
  m.p = slot_derivative<Jet1, 4>(L.density, s1, 1, aggregate_grades(L, x.grades()));
  for (std::size_t k = 0; k < 4; ++k) m.slots[k] = value_part(s1[k]);
  return m;
}

Multivector residual_impl(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& pt,
                          const GaugeBackground& bg, const Momentum& m) {
  const GradeSet gx = x.grades();
  const Multivector dx = slot_derivative<double, 4>(L.density, m.slots, 0, gx);
  return grade_restrict(dx - dual_aggregate<double>(L, m.p, pt.form(), bg), gx);
}

double weight_at(const LagrangianSpec& L, const GaugeBackground& bg, const PositionForm& p) {
  return L.weight == Weight::det_h ? bg.h(p).determinant() : 1.0;
}

/// det(h) sum_mu gamma^mu [(h*(gamma_mu) * A) . P] at Jet1.
BasicMultivector<Jet1> current_jet(const LagrangianSpec& L, const FieldExpr& a, const PositionForm& pt,
                                   const GaugeBackground& bg, const BasicMultivector<Jet1>& p) {
  const auto x1 = seeded_position<Jet1>(pt);
  const auto aj = a.eval(x1);
  const DelMode dm = del_mode(L.mode);
  BasicMultivector<Jet1> w;
  if (family(L.mode) == ModeFamily::flat) {
    for (int mu = 0; mu < 4; ++mu) {
      const auto t = scalar_product(mode_product(constant_as<Jet1>(gamma(mu)), aj, dm), p);
      w += scale(t, constant_as<Jet1>(gamma_up(mu)));
    }
    return w;
  }
  const auto s = bg.sample(x1);
  for (int mu = 0; mu < 4; ++mu) {
    const auto t = scalar_product(mode_product(s.h_star.apply(constant_as<Jet1>(gamma(mu))), aj, dm), p);
    w += scale(t, constant_as<Jet1>(gamma_up(mu)));
  }
  return scale(s.det, w);
}

}  // namespace

LagrangianSpec make_builtin(std::string_view name, const PhysicalParams& params, const Sources& sources) {
  params.validate();
  LagrangianSpec L;
  L.name = std::string(name);
  L.params = params;
  L.current = sources.current;
  L.potential = sources.potential;
  if (name == "maxwell_flat" || name == "maxwell_gauge") {
    L.mode = name == "maxwell_flat" ? DerivativeMode::flat_outer : DerivativeMode::gauge_outer;
    L.density = maxwell_density(params);
  } else if (name == "dirac_flat" || name == "dirac_gauge") {
    L.mode = name == "dirac_flat" ? DerivativeMode::flat_clifford : DerivativeMode::spinor;
    L.density = dirac_density(params);
  } else {
    throw InvalidParameterError("unknown built-in Lagrangian: " + std::string(name));
  }
  L.weight = family(L.mode) == ModeFamily::flat ? Weight::unit : Weight::det_h;
  return L;
}

double density(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p, const GaugeBackground& bg_in) {
  check_field(L, x);
  const GaugeBackground& bg = effective_background(L, bg_in);
  const auto z = x.eval(seeded_position<Jet1>(p));
  const std::array<Multivector, 4> s{value_part(z), aggregate<double>(L, z, p.form(), bg), L.current(p),
                                     L.potential(p)};
  return L.density(Slots<double>(s));
}

double variation(const LagrangianSpec& L, const FieldExpr& x, const FieldExpr& a, const PositionForm& p,
                 const GaugeBackground& bg_in) {
  check_field(L, x);
  if (!a.grades().subset_of(x.grades())) {
    throw GradeError("variation direction has grades " + a.grades().to_string() + " outside the field's " +
                     x.grades().to_string());
  }
  const GaugeBackground& bg = effective_background(L, bg_in);
  const auto x1 = seeded_position<Jet1>(p);
  const auto x0 = p.form();
  const auto zx = x.eval(x1);
  const auto za = a.eval(x1);
  const Multivector dx = aggregate<double>(L, zx, x0, bg);
  const Multivector da = aggregate<double>(L, za, x0, bg);
  const double w = weight_at(L, bg, p);
  if (!L.density.structural()) {
    const double step = kNumericStep;
    auto at = [&](double lambda) {
      const std::array<Multivector, 4> s{value_part(zx) + value_part(za) * lambda, dx + da * lambda, L.current(p),
                                         L.potential(p)};
      return L.density(Slots<double>(s));
    };
    return w * (at(step) - at(-step)) / (2.0 * step);
  }
  using E = Eps<double>;
  std::array<BasicMultivector<E>, 4> s{lift<E>(value_part(zx)), lift<E>(dx), lift<E>(L.current(p)),
                                       lift<E>(L.potential(p))};
  const auto av = value_part(za);
  for (unsigned k = 0; k < kBlades; ++k) {
    s[0][k].d[0] = av[k];
    s[1][k].d[0] = da[k];
  }
  return w * L.density(Slots<E>(s)).d[0];
}

Multivector ele_residual_flat(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p) {
  if (family(L.mode) != ModeFamily::flat) {
    throw ModeMismatchError(std::string("ele_residual_flat: Lagrangian mode is ") + to_string(L.mode));
  }
  const auto& bg = flat_background();
  return residual_impl(L, x, p, bg, momentum(L, x, p, bg));
}

Multivector ele_residual_gauge(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p,
                               const GaugeBackground& bg) {
  if (family(L.mode) != ModeFamily::gauge) {
    throw ModeMismatchError(std::string("ele_residual_gauge: Lagrangian mode is ") + to_string(L.mode));
  }
  return residual_impl(L, x, p, bg, momentum(L, x, p, bg));
}

Multivector ele_residual_spinor(const LagrangianSpec& L, const FieldExpr& psi, const PositionForm& p,
                                const GaugeBackground& bg) {
  if (family(L.mode) != ModeFamily::spinor) {
    throw ModeMismatchError(std::string("ele_residual_spinor: Lagrangian mode is ") + to_string(L.mode));
  }
  check_field(L, psi);
  return residual_impl(L, psi, p, bg, momentum(L, psi, p, bg));
}

Multivector ele_residual(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p,
                         const GaugeBackground& bg) {
  switch (family(L.mode)) {
    case ModeFamily::flat:
      return ele_residual_flat(L, x, p);
    case ModeFamily::gauge:
      return ele_residual_gauge(L, x, p, bg);
    case ModeFamily::spinor:
      return ele_residual_spinor(L, x, p, bg);
  }
  return {};
}

Multivector variation_current(const LagrangianSpec& L, const FieldExpr& x, const FieldExpr& a, const PositionForm& p,
                              const GaugeBackground& bg_in) {
  check_field(L, x);
  const GaugeBackground& bg = effective_background(L, bg_in);
  return value_part(current_jet(L, a, p, bg, momentum(L, x, p, bg).p));
}

double decomposition_check(const LagrangianSpec& L, const FieldExpr& x, const FieldExpr& a, const PositionForm& p,
                           const GaugeBackground& bg_in) {
  check_field(L, x);
  const GaugeBackground& bg = effective_background(L, bg_in);
  const double delta = variation(L, x, a, p, bg);
  const Momentum m = momentum(L, x, p, bg);
  const Multivector ele = residual_impl(L, x, p, bg, m);
  const double w = weight_at(L, bg, p);
  const double det = family(L.mode) == ModeFamily::flat ? 1.0 : bg.h(p).determinant();
  const double div = del_jet<double>(current_jet(L, a, p, bg, m.p), DelMode::divergence).scalar();
  return std::abs(delta - w * scalar_product(a(p), ele) - (w / det) * div);
}

EleReport ele_report(const LagrangianSpec& L, const FieldExpr& x, std::span<const PositionForm> points,
                     const GaugeBackground& bg, const FieldExpr* variation_field) {
  EleReport r;
  r.lagrangian = L.name;
  r.mode = L.mode;
  r.norms.reserve(points.size());
  for (const auto& p : points) r.norms.push_back(norm(ele_residual(L, x, p, bg)));
  if (!r.norms.empty()) {
    r.max = *std::max_element(r.norms.begin(), r.norms.end());
    r.mean = std::accumulate(r.norms.begin(), r.norms.end(), 0.0) / static_cast<double>(r.norms.size());
  }
  if (variation_field != nullptr) {
    r.decomposition = 0.0;
    for (const auto& p : points) r.decomposition = std::max(r.decomposition, decomposition_check(L, x, *variation_field, p, bg));
  }
  return r;
}

}  // namespace mfl
