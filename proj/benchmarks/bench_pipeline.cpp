#include <benchmark/benchmark.h>

#include "acmg/analysis.hpp"

using namespace acmg;

namespace {

void BM_LeviCivita(benchmark::State& state) {
  auto e = hyperbolic<double>(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(levi_civita(e.model));
}
BENCHMARK(BM_LeviCivita)->Arg(1)->Arg(2)->Arg(3);

void BM_Curvature(benchmark::State& state) {
  auto e = hyperbolic<double>(static_cast<int>(state.range(0)), 1.0);
  auto conn = levi_civita(e.model);
  for (auto _ : state) benchmark::DoNotOptimize(curvature(e.model, conn));
}
BENCHMARK(BM_Curvature)->Arg(1)->Arg(2)->Arg(3);

void BM_Decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto e = hyperbolic<double>(n, 1.0);
  auto conn = levi_civita(e.model);
  auto tor = intrinsic_torsion(conn, e.acms);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(tor.xi, e.acms));
}
BENCHMARK(BM_Decompose)->Arg(1)->Arg(2)->Arg(3);

void BM_FullAnalysis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto e = hyperbolic<double>(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(e));
}
BENCHMARK(BM_FullAnalysis)->Arg(1)->Arg(2)->Arg(3);

void BM_FullAnalysisH12(benchmark::State& state) {
  auto e = h12_example('B');
  for (auto _ : state) benchmark::DoNotOptimize(analyze(e));
}
BENCHMARK(BM_FullAnalysisH12);

void BM_FullAnalysisExact(benchmark::State& state) {
  auto e = heisenberg_h1r<Rational>(2, h1r_default_phi<Rational>(2));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(e));
}
BENCHMARK(BM_FullAnalysisExact);

}  // namespace

BENCHMARK_MAIN();
