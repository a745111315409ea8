#include <benchmark/benchmark.h>

#include "pythmod/counter.hpp"
#include "pythmod/expsum.hpp"
#include "pythmod/modular.hpp"

namespace {

using namespace pythmod;

void BM_CountSqrtBucket(benchmark::State& state) {
  const CountConfig cfg{PrimePowerModulus(7, static_cast<int>(state.range(0))), static_cast<double>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(count_smoothed(cfg).measured_T);
}
BENCHMARK(BM_CountSqrtBucket)->Args({3, 60})->Args({4, 233})->Args({5, 908})->Unit(benchmark::kMillisecond);

void BM_CountTripleLoop(benchmark::State& state) {
  CountConfig cfg{PrimePowerModulus(7, 3), static_cast<double>(state.range(0))};
  cfg.method = CountMethod::TripleLoop;
  for (auto _ : state) benchmark::DoNotOptimize(count_smoothed(cfg).measured_T);
}
BENCHMARK(BM_CountTripleLoop)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_CountBoxExact(benchmark::State& state) {
  const PrimePowerModulus m(7, 6);
  for (auto _ : state) benchmark::DoNotOptimize(count_box_exact(m, state.range(0)));
}
BENCHMARK(BM_CountBoxExact)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ESumBrute(benchmark::State& state) {
  const ExpSumSpec spec = make_exp_sum_spec(3, 4, 1, PrimePowerModulus(7, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(e_sum(spec, SumMode::BruteForce));
}
BENCHMARK(BM_ESumBrute)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_ESumClosed(benchmark::State& state) {
  const ExpSumSpec spec = make_exp_sum_spec(3, 4, 1, PrimePowerModulus(7, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(e_sum(spec, SumMode::Closed));
}
BENCHMARK(BM_ESumClosed)->DenseRange(3, 11)->Unit(benchmark::kMicrosecond);

void BM_SqrtMod(benchmark::State& state) {
  const PrimePowerModulus m(7, 11);
  std::int64_t a = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqrt_mod(a, m));
    a = a * 4 % 1000003 + 1;
    if (a % 7 == 0) ++a;
  }
}
BENCHMARK(BM_SqrtMod);

}  // namespace

BENCHMARK_MAIN();
