#include "mfl/random_fields.hpp"

#include <cmath>

namespace mfl {

GradeSet RandomSource::grade_set() { return GradeSet::from_bits(static_cast<std::uint8_t>(integer(1, 31))); }

Multivector RandomSource::multivector(GradeSet g) {
  Multivector m;
  for (unsigned mask = 0; mask < kBlades; ++mask) {
    if (g.contains_blade(mask)) m[mask] = uniform();
  }
  return m;
}

PositionForm RandomSource::point(double half_width) {
  PositionForm p;
  for (auto& c : p.coords) c = uniform(-half_width, half_width);
  return p;
}

std::vector<PositionForm> RandomSource::points(std::size_t n, double half_width) {
  std::vector<PositionForm> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(point(half_width));
  return out;
}

Extensor11 RandomSource::invertible_extensor(double min_det) {
  for (;;) {
    Extensor11 t;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) t(r, c) = uniform();
    }
    if (std::abs(t.determinant()) > min_det) return t;
  }
}

// Every draw is sequenced in its own statement so the stream order never depends on
// unspecified argument evaluation order.

FieldExpr RandomSource::scalar_field() {
  const double c0 = uniform();
  const FieldExpr lin = FieldExpr::coordinate(vector());
  const double q = uniform();
  const FieldExpr k1 = FieldExpr::coordinate(vector());
  const FieldExpr k2 = FieldExpr::coordinate(vector());
  const double s = uniform();
  const FieldExpr k3 = FieldExpr::coordinate(vector());
  const double phi = uniform(-3.0, 3.0);
  const double e = uniform();
  const FieldExpr k4 = FieldExpr::coordinate(vector());
  const FieldExpr k5 = FieldExpr::coordinate(vector());
  return FieldExpr::constant(c0) + lin + q * (k1 * k2) + s * sin(k3 + FieldExpr::constant(phi)) + e * (cos(k4) * k5);
}

FieldExpr RandomSource::field(GradeSet g) {
  const Multivector c0 = multivector(g);
  const FieldExpr k = FieldExpr::coordinate(vector());
  const Multivector c1 = multivector(g);
  const FieldExpr s1 = scalar_field();
  const Multivector c2 = multivector(g);
  const FieldExpr s2 = scalar_field();
  const Multivector c3 = multivector(g);
  const FieldExpr f = FieldExpr::constant(c0) + k * FieldExpr::constant(c1) + s1 * FieldExpr::constant(c2) +
                      s2 * FieldExpr::constant(c3);
  return f.with_grades(g);
}

FieldExpr RandomSource::rotor_field(double amplitude) {
  static constexpr unsigned kRotations[] = {0b0110, 0b1010, 0b1100};
  static constexpr unsigned kBoosts[] = {0b0011, 0b0101, 0b1001};
  const Multivector b1 = Multivector::blade(kRotations[integer(0, 2)]);
  const Multivector b2 = Multivector::blade(kBoosts[integer(0, 2)]);
  const FieldExpr t1 = amplitude * scalar_field();
  const FieldExpr t2 = amplitude * scalar_field();
  return (FieldExpr::bivector_exp(b1, t1) * FieldExpr::bivector_exp(b2, t2)).with_grades(GradeSet::even());
}

ExtensorField RandomSource::smooth_extensor_field(double amplitude) {
  std::array<FieldExpr, 16> entries;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const FieldExpr k = FieldExpr::coordinate(vector());
      const double phi = uniform(-3.0, 3.0);
      const double a = amplitude * uniform();
      FieldExpr e = a * sin(k + FieldExpr::constant(phi));
      if (r == c) e = FieldExpr::constant(1.0) + e;
      entries[static_cast<std::size_t>(r * 4 + c)] = e;
    }
  }
  return ExtensorField(entries);
}

std::array<FieldExpr, 4> RandomSource::bivector_connection() {
  std::array<FieldExpr, 4> omega;
  for (auto& o : omega) o = field(GradeSet{2});
  return omega;
}

}  // namespace mfl
