#include "mfl/extensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace mfl {

namespace {

Eigen::Matrix4d to_eigen(const Extensor11& t) {
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = t(r, c);
  }
  return m;
}

}  // namespace

ExtendedExtensor::ExtendedExtensor(const Extensor11& t) {
  const auto img = t.blade_images();
  for (unsigned col = 0; col < kBlades; ++col) {
    for (unsigned row = 0; row < kBlades; ++row) m_[row][col] = img[col][row];
  }
}

Multivector ExtendedExtensor::operator()(const Multivector& x) const {
  Multivector out;
  for (unsigned row = 0; row < kBlades; ++row) {
    double s = 0.0;
    for (unsigned col = 0; col < kBlades; ++col) s += m_[row][col] * x[col];
    out[row] = s;
  }
  return out;
}

double matrix_determinant(const Extensor11& t) { return to_eigen(t).partialPivLu().determinant(); }

double checked_determinant(const Extensor11& t, double tol) {
  const double via_pseudoscalar = t.determinant();
  const double via_matrix = matrix_determinant(t);
  const double scale = std::max({1.0, std::abs(via_pseudoscalar), std::abs(via_matrix)});
  if (std::abs(via_pseudoscalar - via_matrix) > tol * scale) {
    throw std::logic_error("determinant routes disagree");
  }
  return via_pseudoscalar;
}

Extensor11 gauge_star(const Extensor11& h, double agreement_tol) {
  const Extensor11 a = h.inverse().adjoint();
  const Extensor11 b = h.adjoint().inverse();
  if (max_abs_difference(a, b) > agreement_tol * std::max(1.0, max_abs_difference(a, Extensor11{}))) {
    throw std::logic_error("gauge_star: (h^-1)^dagger and (h^dagger)^-1 disagree");
  }
  return a;
}

double max_abs_difference(const Extensor11& a, const Extensor11& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(a.matrix()[i] - b.matrix()[i]));
  return m;
}

}  // namespace mfl
