#include <benchmark/benchmark.h>

#include "skdv/quadrature.hpp"
#include "skdv/spectral.hpp"
#include "skdv/spin.hpp"
#include "skdv/virasoro.hpp"
#include "skdv/volume.hpp"

using namespace skdv;

static void BM_KwTable(benchmark::State& state) {
  Truncation t{static_cast<int>(state.range(0)), 8, static_cast<int>(state.range(1)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(kw_correlators(t).size());
}
BENCHMARK(BM_KwTable)->Args({2, 4})->Args({3, 5})->Unit(benchmark::kMillisecond);

static void BM_GradedExp(benchmark::State& state) {
  Truncation t{2, 6, static_cast<int>(state.range(0)), 6};
  GradedSeries f = bgw_free_energy(t);
  GradedSeries pos = f.filtered([](const SeriesKey& k) { return k.h >= 0; });
  for (auto _ : state) benchmark::DoNotOptimize(pos.exp().size());
}
BENCHMARK(BM_GradedExp)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_TripleRoute(benchmark::State& state) {
  Truncation t{2, 6, 4, 6};
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_compare(t).compared);
}
BENCHMARK(BM_TripleRoute)->Unit(benchmark::kMillisecond);

static void BM_KdvResidual(benchmark::State& state) {
  GradedSeries f = assemble_z_omega(Truncation{2, 6, 5, 8});
  for (auto _ : state) benchmark::DoNotOptimize(kdv_residual(f).certified_degree);
}
BENCHMARK(BM_KdvResidual)->Unit(benchmark::kMillisecond);

static void BM_Volume(benchmark::State& state) {
  int g = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(volume_polynomial(g, n, 3).terms().size());
}
BENCHMARK(BM_Volume)->Args({1, 1})->Args({0, 4})->Args({2, 1})->Unit(benchmark::kMillisecond);

static void BM_LineMoment(benchmark::State& state) {
  Scheme s = state.range(0) ? Scheme::GaussKronrod : Scheme::TanhSinh;
  // Distinct X each iteration so the moment cache does not answer.
  Real X("1.25");
  for (auto _ : state) {
    X += Real("1e-6");
    benchmark::DoNotOptimize(line_moment(X, 5, {1e-12, s}));
  }
}
BENCHMARK(BM_LineMoment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_TopologicalRecursion(benchmark::State& state) {
  CurveKind kind = static_cast<CurveKind>(state.range(0));
  int gmax = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(tr_correlators(kind, gmax, 3).entries().size());
  state.SetLabel(curve_name(kind));
}
BENCHMARK(BM_TopologicalRecursion)
    ->Args({static_cast<int>(CurveKind::Airy), 2})
    ->Args({static_cast<int>(CurveKind::CK), 2})
    ->Args({static_cast<int>(CurveKind::CNS), 2})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
