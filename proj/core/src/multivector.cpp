#include "mfl/multivector.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace mfl {

std::string GradeSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int g = 0; g <= 4; ++g) {
    if (!contains(g)) continue;
    if (!first) s += ",";
    s += std::to_string(g);
    first = false;
  }
  return s + "}";
}

GradeSet grade_set(const Multivector& x, double tol) {
  GradeSet g;
  for (unsigned i = 0; i < kBlades; ++i) {
    if (std::abs(x[i]) > tol) g.insert(blade_grade(i));
  }
  return g;
}

double norm(const Multivector& x) {
  double s = 0.0;
  for (double c : x.components()) s += c * c;
  return std::sqrt(s);
}

double max_abs(const Multivector& x) {
  double m = 0.0;
  for (double c : x.components()) m = std::max(m, std::abs(c));
  return m;
}

bool operator==(const Multivector& a, const Multivector& b) { return a.components() == b.components(); }

std::string blade_name(unsigned mask) {
  if (mask == 0) return "1";
  std::string s = "e";
  for (int k = 0; k < 4; ++k) {
    if (mask & (1u << k)) s += static_cast<char>('0' + k);
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Multivector& x) {
  std::ostringstream ss;
  ss.precision(os.precision());
  bool any = false;
  for (unsigned i = 0; i < kBlades; ++i) {
    if (x[i] == 0.0) continue;
    if (any) ss << " + ";
    ss << x[i];
    if (i != 0) ss << "*" << blade_name(i);
    any = true;
  }
  if (!any) ss << "0";
  return os << ss.str();
}

}  // namespace mfl
