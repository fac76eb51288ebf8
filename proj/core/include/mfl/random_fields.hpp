#pragma once

// Seeded generators for multivectors, extensors, smooth fields and backgrounds.
// Fields are degree-2 polynomials with trigonometric envelopes; coefficients in [-1, 1].

#include <cstdint>
#include <random>
#include <vector>

#include "mfl/extensor.hpp"
#include "mfl/field.hpp"
#include "mfl/multivector.hpp"

namespace mfl {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Nonempty random subset of {0..4}.
  GradeSet grade_set();
  Multivector multivector(GradeSet g = GradeSet::all());
  Multivector vector() { return multivector(GradeSet{1}); }
  PositionForm point(double half_width = 1.0);
  std::vector<PositionForm> points(std::size_t n, double half_width = 1.0);

  /// Entries uniform in [-1, 1], redrawn until |det| exceeds `min_det`.
  Extensor11 invertible_extensor(double min_det = 0.05);

  /// c0 + c.x + q (x.k1)(x.k2) + s sin(x.k3 + phi) + e cos(x.k4)(x.k5).
  FieldExpr scalar_field();
  /// Multivector field whose values span exactly the grades in g.
  FieldExpr field(GradeSet g);

  /// R = exp(B1 t1(x)) exp(B2 t2(x)) with a spatial-rotation blade B1 and a boost blade B2.
  FieldExpr rotor_field(double amplitude = 0.5);
  /// h = I + amplitude * (bounded trigonometric entries); invertible for amplitude < 0.25.
  ExtensorField smooth_extensor_field(double amplitude = 0.2);
  /// Bivector-valued columns Omega(gamma_mu), unrelated to any h.
  std::array<FieldExpr, 4> bivector_connection();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace mfl
