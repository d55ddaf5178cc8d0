#include <benchmark/benchmark.h>

#include "semiframe/hilbert/families.hpp"
#include "semiframe/muckenhoupt/a2.hpp"
#include "semiframe/ops/duals.hpp"
#include "semiframe/ops/matrices.hpp"
#include "semiframe/translates/translates.hpp"

using namespace semiframe;

static void BM_FrameMatrixSparse(benchmark::State& state) {
  const auto fam = hilbert::stoeva();
  const Index n = state.range(0);
  const hilbert::Level level{n + 1, n};
  for (auto _ : state) benchmark::DoNotOptimize(ops::frame_matrix(fam, level).matrix.data());
}
BENCHMARK(BM_FrameMatrixSparse)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

static void BM_FrameMatrixDense(benchmark::State& state) {
  const auto fam = hilbert::random_frame(7);
  const Index n = state.range(0);
  const hilbert::Level level{n / 2, n};
  for (auto _ : state) benchmark::DoNotOptimize(ops::frame_matrix(fam, level).matrix.data());
}
BENCHMARK(BM_FrameMatrixDense)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

static void BM_CanonicalDual(benchmark::State& state) {
  const auto fam = hilbert::diana();
  const Index n = state.range(0);
  const hilbert::Level level{n + 1, n};
  const ops::Projector p = ops::analytic_projector(fam, level.dim);
  for (auto _ : state) benchmark::DoNotOptimize(ops::canonical_dual(fam, p, level).vectors.size());
}
BENCHMARK(BM_CanonicalDual)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond);

static void BM_Walnut(benchmark::State& state) {
  using namespace translates;
  const TranslateSystem s(profiles::unit_indicator(), 1.0, state.range(0), 64.0);
  const auto f = s.sample(profiles::gaussian(0.3, 1.0, 2.0).value);
  for (auto _ : state) benchmark::DoNotOptimize(walnut_apply(f, s).output_squared_norm);
}
BENCHMARK(BM_Walnut)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

static void BM_Pphi(benchmark::State& state) {
  using namespace translates;
  const TranslateSystem s(profiles::unit_indicator(), 1.0, 256, 1.0);
  PphiOptions o;
  o.K = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(pphi(s, o).max_value);
}
BENCHMARK(BM_Pphi)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMillisecond);

static void BM_A2Estimate(benchmark::State& state) {
  const auto w = state.range(0) == 0 ? muckenhoupt::Weight::power(-0.5) : muckenhoupt::Weight::plateau(12).pow(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(muckenhoupt::a2_estimate(w).sup_infinite);
}
BENCHMARK(BM_A2Estimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
