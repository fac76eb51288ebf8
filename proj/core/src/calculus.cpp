#include "mfl/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfl {

GradeSet del_grades(GradeSet g, DelMode mode) {
  switch (mode) {
    case DelMode::gradient:
      return g.shifted(1) | g.shifted(-1);
    case DelMode::divergence:
      return g.shifted(-1);
    case DelMode::curl:
      return g.shifted(1);
  }
  return {};
}

const char* to_string(DelMode mode) {
  switch (mode) {
    case DelMode::gradient:
      return "gradient";
    case DelMode::divergence:
      return "divergence";
    case DelMode::curl:
      return "curl";
  }
  return "?";
}

Multivector directional_derivative(const FieldExpr& x, const Multivector& a, const PositionForm& p) {
  const auto z = x.eval(seeded_position<Jet1>(p));
  Multivector out;
  for (int mu = 0; mu < 4; ++mu) {
    const double c = a[1u << mu];
    if (c != 0.0) out += partial_part(z, static_cast<std::size_t>(mu)) * c;
  }
  return out;
}

Multivector del(const FieldExpr& x, DelMode mode, const PositionForm& p) {
  return del_jet<double>(x.eval(seeded_position<Jet1>(p)), mode);
}

FieldExpr boundary_current_flat(const FieldExpr& x, const FieldExpr& y, DelMode mode) {
  FieldExpr v;
  for (int mu = 0; mu < 4; ++mu) {
    const FieldExpr g = FieldExpr::constant(gamma(mu));
    FieldExpr prod;
    switch (mode) {
      case DelMode::gradient:
        prod = g * x;
        break;
      case DelMode::divergence:
        prod = left_contraction(g, x);
        break;
      case DelMode::curl:
        prod = outer(g, x);
        break;
    }
    const FieldExpr term = FieldExpr::constant(gamma_up(mu)) * scalar_product(prod, y);
    v = mu == 0 ? term : v + term;
  }
  return v;
}

double check_identity_flat(const FieldExpr& x, const FieldExpr& y, DelMode mode, std::span<const PositionForm> points) {
  const FieldExpr v = boundary_current_flat(x, y, mode);
  double worst = 0.0;
  for (const auto& p : points) {
    const auto xp = seeded_position<Jet1>(p);
    const auto xj = x.eval(xp);
    const auto yj = y.eval(xp);
    const double lhs = scalar_product(del_jet<double>(xj, mode), value_part(yj)) +
                       scalar_product(value_part(xj), del_jet<double>(yj, dual_mode(mode)));
    const double rhs = del_jet<double>(v.eval(xp), DelMode::divergence).scalar();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double check_del_split(const FieldExpr& x, std::span<const PositionForm> points) {
  double worst = 0.0;
  for (const auto& p : points) {
    const auto z = x.eval(seeded_position<Jet1>(p));
    const auto r = del_jet<double>(z, DelMode::gradient) - del_jet<double>(z, DelMode::divergence) -
                   del_jet<double>(z, DelMode::curl);
    worst = std::max(worst, max_abs(r));
  }
  return worst;
}

GaussResult gauss_check(const FieldExpr& v, const Box& box, int n) {
  if (n < 2) throw std::invalid_argument("gauss_check: n must be at least 2");
  std::array<double, 4> h{};
  for (std::size_t k = 0; k < 4; ++k) h[k] = (box.hi[k] - box.lo[k]) / n;
  const double cell = h[0] * h[1] * h[2] * h[3];

  GaussResult r;
  PositionForm p;
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        for (int i3 = 0; i3 < n; ++i3) {
          const std::array<int, 4> idx{i0, i1, i2, i3};
          for (std::size_t k = 0; k < 4; ++k) p.coords[k] = box.lo[k] + (idx[k] + 0.5) * h[k];
          r.volume += del(v, DelMode::divergence, p).scalar() * cell;
        }
      }
    }
  }

  // Face mu: the three transverse axes are integrated by midpoint rule; the outward normal
  // carries +v^mu on the high face and -v^mu on the low face.
  for (int mu = 0; mu < 4; ++mu) {
    std::array<int, 3> t{};
    for (int k = 0, j = 0; k < 4; ++k) {
      if (k != mu) t[static_cast<std::size_t>(j++)] = k;
    }
    const double face = cell / h[static_cast<std::size_t>(mu)];
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          const std::array<int, 3> idx{a, b, c};
          for (std::size_t j = 0; j < 3; ++j) {
            const auto k = static_cast<std::size_t>(t[j]);
            p.coords[k] = box.lo[k] + (idx[j] + 0.5) * h[k];
          }
          const auto m = static_cast<std::size_t>(mu);
          p.coords[m] = box.hi[m];
          const double hi = v(p)[1u << mu];
          p.coords[m] = box.lo[m];
          const double lo = v(p)[1u << mu];
          r.flux += (hi - lo) * face;
        }
      }
    }
  }
  return r;
}

}  // namespace mfl
