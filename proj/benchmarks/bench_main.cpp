#include <benchmark/benchmark.h>

#include "bowtie/analytic.hpp"
#include "bowtie/exact.hpp"
#include "bowtie/siegel2.hpp"
#include "bowtie/strong_symmetry.hpp"

using namespace bowtie;

static void BM_CohenTable(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(exact::cohen_h_table(7, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_CohenTable)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

static void BM_CohenSingle(benchmark::State& state) {
  for (auto _ : state)
    for (std::int64_t N = 1; N <= state.range(0); ++N) benchmark::DoNotOptimize(exact::cohen_h(7, N));
}
BENCHMARK(BM_CohenSingle)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SiegelEisenstein(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(siegel2::siegel_eisenstein2(8, state.range(0)));
}
BENCHMARK(BM_SiegelEisenstein)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_CheckStrongSymmetry(benchmark::State& state) {
  const std::int64_t window = state.range(0);
  const auto F = siegel2::siegel_eisenstein2(8, window * 3);
  for (auto _ : state) benchmark::DoNotOptimize(strong_symmetry::check_strong_symmetry(F, {2, 3}, window));
}
BENCHMARK(BM_CheckStrongSymmetry)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SymPairEnumeration(benchmark::State& state) {
  // cached after the first call; this times the scan over the stored list
  const std::int64_t H = state.range(0);
  for (auto _ : state) {
    std::size_t n = 0;
    for (const auto& g : *analytic::sym_pair_reps(H)) n += analytic::is_diagonal_type(g);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_SymPairEnumeration)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_EvalE2(benchmark::State& state) {
  analytic::TruncationPolicy pol;
  pol.height = state.range(0);
  const auto P = analytic::SiegelPoint::make({0.0, 1.6}, {0.1, 0.1}, {0.0, 1.5}, {0.75, 0.0});
  analytic::eval_E2(P, 8, pol);  // warm the representative cache
  for (auto _ : state) benchmark::DoNotOptimize(analytic::eval_E2(P, 8, pol));
}
BENCHMARK(BM_EvalE2)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_EvalB(benchmark::State& state) {
  analytic::TruncationPolicy pol;
  pol.pair_height = state.range(0);
  const auto P = analytic::SiegelPoint::make({0.0, 1.6}, {0.1, 0.1}, {0.0, 1.5}, {0.75, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(analytic::eval_B(P, 8, pol));
}
BENCHMARK(BM_EvalB)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
