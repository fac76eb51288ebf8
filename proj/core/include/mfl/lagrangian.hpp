#pragma once

// Lagrangian mappings, variations, Euler-Lagrange residuals and the variation
// decomposition, for flat, gauge and spinor derivative modes.
//
// Densities are ScalarFn's over four slots: (X, d, J, A_ext), where d is the
// declared derivative aggregate of X and J, A_ext are fixed external sources.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfl/calculus.hpp"
#include "mfl/field.hpp"
#include "mfl/gauge.hpp"
#include "mfl/scalar_fn.hpp"

namespace mfl {

enum class DerivativeMode {
  flat_contraction,
  flat_outer,
  flat_clifford,
  gauge_contraction,
  gauge_outer,
  gauge_clifford,
  spinor
};

enum class ModeFamily { flat, gauge, spinor };

ModeFamily family(DerivativeMode m);
/// The product used to form the derivative aggregate (spinor: gradient).
DelMode del_mode(DerivativeMode m);
const char* to_string(DerivativeMode m);

struct PhysicalParams {
  double mu0 = 1.0;
  double e = 1.0;
  double m = 1.0;
  double c = 1.0;
  double hbar = 1.0;

  /// Throws InvalidParameterError unless mu0, c, hbar > 0, m >= 0 and all are finite.
  void validate() const;
};

enum class Weight { unit, det_h };

struct LagrangianSpec {
  std::string name;
  DerivativeMode mode = DerivativeMode::flat_outer;
  ScalarFn density;
  Weight weight = Weight::unit;
  PhysicalParams params;
  FieldExpr current;   // J
  FieldExpr potential; // A_ext
  Construction construction = Construction::omega;
};

struct Sources {
  FieldExpr current;
  FieldExpr potential;
};

/// maxwell_flat | dirac_flat | maxwell_gauge | dirac_gauge. Throws InvalidParameterError.
LagrangianSpec make_builtin(std::string_view name, const PhysicalParams& params = {}, const Sources& sources = {});

/// Density l(X, d) at a point (unweighted).
double density(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p,
               const GaugeBackground& bg = GaugeBackground::flat());

/// d/dlambda of weight * l(X + lambda A, d + lambda dA) at 0. Throws GradeError unless grades(A) within grades(X).
double variation(const LagrangianSpec& L, const FieldExpr& x, const FieldExpr& a, const PositionForm& p,
                 const GaugeBackground& bg = GaugeBackground::flat());

/// d_X l - del*' d_{del* X} l, restricted to grades(X). Throws ModeMismatchError unless L is flat.
Multivector ele_residual_flat(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p);

/// d_X l - D*' d_{D* X} l. Throws ModeMismatchError unless L is a gauge mode.
Multivector ele_residual_gauge(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p,
                               const GaugeBackground& bg);

/// d_psi l - D^s d_{D^s psi} l. Throws ModeMismatchError unless spinor mode, GradeError unless psi is even.
Multivector ele_residual_spinor(const LagrangianSpec& L, const FieldExpr& psi, const PositionForm& p,
                                const GaugeBackground& bg);

/// Dispatches on the mode family.
Multivector ele_residual(const LagrangianSpec& L, const FieldExpr& x, const PositionForm& p,
                         const GaugeBackground& bg = GaugeBackground::flat());

/// The boundary current paired with A: weight-free part det(h) sum_mu gamma^mu[(h*(gamma_mu) * A) . P].
Multivector variation_current(const LagrangianSpec& L, const FieldExpr& x, const FieldExpr& a, const PositionForm& p,
                              const GaugeBackground& bg = GaugeBackground::flat());

/// |delta(w l) - w A.ELE - (w / det h) del.current| at a point, w the Lagrangian weight.
double decomposition_check(const LagrangianSpec& L, const FieldExpr& x, const FieldExpr& a, const PositionForm& p,
                           const GaugeBackground& bg = GaugeBackground::flat());

struct EleReport {
  std::string lagrangian;
  DerivativeMode mode = DerivativeMode::flat_outer;
  std::string field;
  std::uint64_t seed = 0;
  std::vector<double> norms;
  double max = 0.0;
  double mean = 0.0;
  /// Max decomposition residual over the points; negative when no variation field was given.
  double decomposition = -1.0;
};

EleReport ele_report(const LagrangianSpec& L, const FieldExpr& x, std::span<const PositionForm> points,
                     const GaugeBackground& bg = GaugeBackground::flat(), const FieldExpr* variation_field = nullptr);

/// sigma_3 = gamma_3 gamma_0.
Multivector sigma3();

}  // namespace mfl
