#include <benchmark/benchmark.h>

#include "cloakwave/experiments.hpp"
#include "cloakwave/fields.hpp"
#include "cloakwave/mie.hpp"
#include "cloakwave/specfun.hpp"

using namespace cloakwave;

namespace {

CloakConfig unit_config(int d, Real eps) {
  CloakConfig c;
  c.dimension = d;
  c.epsilon = eps;
  c.incident.direction = d == 2 ? Vec{1, 0, 0} : Vec{0, 0, 1};
  return c;
}

void BM_SphTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::sph_table(specfun::SphKind::h1, n, Complex(7.3L)));
}
BENCHMARK(BM_SphTable)->Arg(10)->Arg(50)->Arg(200);

void BM_CylTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::cyl_table(specfun::CylKind::H1, n, Complex(7.3L)));
}
BENCHMARK(BM_CylTable)->Arg(10)->Arg(50)->Arg(200);

void BM_ModeSolve(benchmark::State& state) {
  mie::LayeredMedium m{3, {}, 1};
  for (int j = 1; j <= state.range(0); ++j) m.layers.push_back({0.25L * j, 1 + 0.1L * j, Complex(2, 0.1L)});
  for (auto _ : state) benchmark::DoNotOptimize(mie::mode_solve(m, 1.3L, 4, 1));
}
BENCHMARK(BM_ModeSolve)->Arg(1)->Arg(4)->Arg(16);

void BM_CloakSeries(benchmark::State& state) {
  const auto c = unit_config(3, 1e-2L);
  for (auto _ : state) benchmark::DoNotOptimize(fields::cloak_series(c));
}
BENCHMARK(BM_CloakSeries);

void BM_EvalField(benchmark::State& state) {
  const auto F = fields::cloak_series(unit_config(3, 1e-2L));
  const Vec x{0.7L, -1.1L, 2.9L};
  for (auto _ : state) benchmark::DoNotOptimize(fields::eval_field(F, x));
}
BENCHMARK(BM_EvalField);

void BM_VisibilityNorm(benchmark::State& state) {
  const auto F = fields::cloak_series(unit_config(static_cast<int>(state.range(0)), 1e-2L));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fields::norm_annulus(F, fields::Quantity::DiffVsReference, 2, 4, fields::LimitReference{}));
  }
}
BENCHMARK(BM_VisibilityNorm)->Arg(2)->Arg(3);

void BM_ConvergenceSweep(benchmark::State& state) {
  const std::vector<Real> eps{1e-1L, 3e-2L, 1e-2L, 3e-3L, 1e-3L};
  const auto c = unit_config(3, 0.1L);
  for (auto _ : state) {
    benchmark::DoNotOptimize(experiments::convergence_sweep(c, eps, {static_cast<int>(state.range(0))}));
  }
}
BENCHMARK(BM_ConvergenceSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
