#pragma once

// Scalar-valued functions of multivector slots and their multivector derivatives.
//
// A ScalarFn is evaluated over a span of slot values. Built from a generic
// callable it is available at every scalar level a residual or variation
// needs: double, Eps<double>, Jet1 and Eps<Jet1>. Built from a double-only
// callable it is differentiated by central differences instead.

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "mfl/dual.hpp"
#include "mfl/errors.hpp"
#include "mfl/multivector.hpp"

namespace mfl {

template <class T>
using Slots = std::span<const BasicMultivector<T>>;

class ScalarFn {
 public:
  ScalarFn() = default;

  /// Structurally differentiable: `f` must be callable as T f(Slots<T>) for every supported T.
  template <class F>
  static ScalarFn from(F f, int arity) {
    ScalarFn s;
    s.arity_ = arity;
    s.f0_ = [f](Slots<double> x) { return f(x); };
    s.f1_ = [f](Slots<Eps<double>> x) { return f(x); };
    s.f2_ = [f](Slots<Jet1> x) { return f(x); };
    s.f3_ = [f](Slots<Eps<Jet1>> x) { return f(x); };
    return s;
  }

  /// Double-only function; derivatives fall back to central differences.
  static ScalarFn numeric(std::function<double(Slots<double>)> f, int arity) {
    ScalarFn s;
    s.arity_ = arity;
    s.f0_ = std::move(f);
    return s;
  }

  int arity() const { return arity_; }
  bool structural() const { return static_cast<bool>(f1_); }

  template <class T>
  T operator()(Slots<T> x) const {
    check_arity(x.size());
    if constexpr (std::is_same_v<T, double>) {
      return f0_(x);
    } else {
      const auto& f = pick<T>();
      if (!f) throw std::logic_error("ScalarFn: no structural form available at this scalar level");
      return f(x);
    }
  }

  double operator()(std::initializer_list<Multivector> x) const {
    return (*this)(Slots<double>(x.begin(), x.size()));
  }

 private:
  template <class T>
  const std::function<T(Slots<T>)>& pick() const {
    if constexpr (std::is_same_v<T, Eps<double>>) {
      return f1_;
    } else if constexpr (std::is_same_v<T, Jet1>) {
      return f2_;
    } else {
      static_assert(std::is_same_v<T, Eps<Jet1>>, "unsupported ScalarFn scalar level");
      return f3_;
    }
  }

  void check_arity(std::size_t n) const {
    if (static_cast<int>(n) != arity_) {
      throw std::invalid_argument("ScalarFn: expected " + std::to_string(arity_) + " slots, got " + std::to_string(n));
    }
  }

  int arity_ = 1;
  std::function<double(Slots<double>)> f0_;
  std::function<Eps<double>(Slots<Eps<double>>)> f1_;
  std::function<Jet1(Slots<Jet1>)> f2_;
  std::function<Eps<Jet1>(Slots<Eps<Jet1>>)> f3_;
};

/// Central-difference step of the numeric fallback.
inline constexpr double kNumericStep = 1e-4;

/// d_X F in slot `slot` at the given slot values: sum over blades J with grade in G of
/// e^J dF/dX^J. T is double or Jet1.
template <class T, std::size_t N>
BasicMultivector<T> slot_derivative(const ScalarFn& f, const std::array<BasicMultivector<T>, N>& at, std::size_t slot,
                                    GradeSet g) {
  BasicMultivector<T> out;
  if (f.structural()) {
    using E = Eps<T>;
    std::array<BasicMultivector<E>, N> lifted;
    for (std::size_t k = 0; k < N; ++k) lifted[k] = lift<E>(at[k]);
    for (unsigned mask = 0; mask < kBlades; ++mask) {
      if (!g.contains_blade(mask)) continue;
      lifted[slot][mask].d[0] = T(1.0);
      const E v = f(Slots<E>(lifted));
      lifted[slot][mask].d[0] = T(0.0);
      out[mask] = v.d[0] * blade_square_norm(mask);
    }
    return out;
  }
  if constexpr (std::is_same_v<T, double>) {
    // Richardson-extrapolated central difference, O(step^4).
    std::array<Multivector, N> probe = at;
    auto central = [&](unsigned mask, double step) {
      const double x0 = probe[slot][mask];
      probe[slot][mask] = x0 + step;
      const double fp = f(Slots<double>(probe));
      probe[slot][mask] = x0 - step;
      const double fm = f(Slots<double>(probe));
      probe[slot][mask] = x0;
      return (fp - fm) / (2.0 * step);
    };
    for (unsigned mask = 0; mask < kBlades; ++mask) {
      if (!g.contains_blade(mask)) continue;
      const double d1 = central(mask, kNumericStep);
      const double d2 = central(mask, 0.5 * kNumericStep);
      out[mask] = ((4.0 * d2 - d1) / 3.0) * blade_square_norm(mask);
    }
    return out;
  } else {
    throw std::logic_error("slot_derivative: numeric ScalarFn cannot be differentiated at jet level");
  }
}

/// Multivector derivative of a one-slot function at X0, restricted to grades G.
/// Throws GradeError if X0 carries grades outside G.
inline Multivector multivector_derivative(const ScalarFn& f, const Multivector& x0, GradeSet g) {
  if (!grade_set(x0).subset_of(g)) {
    throw GradeError("multivector_derivative: X0 has grades " + grade_set(x0).to_string() + " outside " +
                     g.to_string());
  }
  return slot_derivative<double, 1>(f, {x0}, 0, g);
}

}  // namespace mfl
