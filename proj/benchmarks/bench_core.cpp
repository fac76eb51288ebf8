#include <benchmark/benchmark.h>

#include <numbers>

#include "mfl/calculus.hpp"
#include "mfl/gauge.hpp"
#include "mfl/lagrangian.hpp"
#include "mfl/lattice.hpp"
#include "mfl/random_fields.hpp"

namespace {

using namespace mfl;

void BM_GeometricProduct(benchmark::State& state) {
  RandomSource rs(1);
  const auto a = rs.multivector();
  const auto b = rs.multivector();
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GeometricProduct);

void BM_ExtensorDeterminant(benchmark::State& state) {
  RandomSource rs(2);
  const auto h = rs.invertible_extensor();
  for (auto _ : state) benchmark::DoNotOptimize(h.determinant());
}
BENCHMARK(BM_ExtensorDeterminant);

// Field evaluation at increasing derivative depth: value, del, flat residual (second order).
void BM_FieldValue(benchmark::State& state) {
  RandomSource rs(3);
  const auto f = rs.field(GradeSet{1});
  const auto p = rs.points(1)[0];
  for (auto _ : state) benchmark::DoNotOptimize(f(p));
}
BENCHMARK(BM_FieldValue);

void BM_FieldDel(benchmark::State& state) {
  RandomSource rs(3);
  const auto f = rs.field(GradeSet{1});
  const auto p = rs.points(1)[0];
  for (auto _ : state) benchmark::DoNotOptimize(del(f, DelMode::gradient, p));
}
BENCHMARK(BM_FieldDel);

void BM_FlatMaxwellResidual(benchmark::State& state) {
  RandomSource rs(3);
  const auto f = rs.field(GradeSet{1});
  const auto p = rs.points(1)[0];
  const auto l = make_builtin("maxwell_flat");
  for (auto _ : state) benchmark::DoNotOptimize(ele_residual_flat(l, f, p));
}
BENCHMARK(BM_FlatMaxwellResidual);

void BM_GaugeMaxwellResidual(benchmark::State& state) {
  RandomSource rs(4);
  const auto f = rs.field(GradeSet{1});
  const auto pts = rs.points(1);
  const auto bg = rotor_gauge(rs.rotor_field(), pts);
  const auto l = make_builtin("maxwell_gauge");
  for (auto _ : state) benchmark::DoNotOptimize(ele_residual_gauge(l, f, pts[0], bg));
}
BENCHMARK(BM_GaugeMaxwellResidual);

void BM_LatticeMaxwellOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Lattice lat(n, {1.0, 1.0, 1.0, 1.0}, Boundary::periodic);
  RandomSource rs(5);
  LatticeField a(lat, GradeSet{1});
  for (std::size_t i = 0; i < lat.sites(); ++i) a.set(i, rs.vector());
  for (auto _ : state) benchmark::DoNotOptimize(maxwell_operator(a));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * lat.sites()));
}
BENCHMARK(BM_LatticeMaxwellOperator)->Arg(6)->Arg(8)->Arg(12);

void BM_LatticeMaxwellSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double side = 2.0 * std::numbers::pi;
  const Lattice lat(n, {side, side, side, side}, Boundary::periodic);
  const auto exact = discretize(
      (FieldExpr::constant(gamma(2)) * cos(coordinate_component(1)) +
       FieldExpr::constant(gamma(1)) * sin(coordinate_component(0) + coordinate_component(3) * 2.0))
          .with_grades(GradeSet{1}),
      lat, GradeSet{1});
  const auto j = maxwell_operator(exact);
  for (auto _ : state) benchmark::DoNotOptimize(solve_maxwell(lat, j));
}
BENCHMARK(BM_LatticeMaxwellSolve)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DiscreteActionGradient(benchmark::State& state) {
  const Lattice lat(8, {1.0, 1.0, 1.0, 1.0}, Boundary::dirichlet);
  RandomSource rs(6);
  LatticeField f(lat, GradeSet::even());
  for (std::size_t i = 0; i < lat.sites(); ++i) f.set_restricted(i, rs.multivector(GradeSet::even()));
  const auto l = make_builtin("dirac_flat");
  for (auto _ : state) benchmark::DoNotOptimize(action_gradient(l, f));
}
BENCHMARK(BM_DiscreteActionGradient)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
