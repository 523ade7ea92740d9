#include <benchmark/benchmark.h>

#include "intenselab/constructions.hpp"

using namespace ilab;

static void BM_QuaternionMul(benchmark::State &state) {
  QuaternionAlgebra alg = sn_algebra(5, 2, 3);
  const auto &R = alg.ring();
  Quaternion x{R.of_int(6), R.of_int(5), R.one(), 0};
  Quaternion y{R.of_int(1), 0, R.of_int(2), R.one()};
  for (auto _ : state) {
    x = alg.mul(x, y);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_QuaternionMul);

static void BM_ClosureYo(benchmark::State &state) {
  for (auto _ : state) {
    auto g = build_yo();
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_ClosureYo)->Unit(benchmark::kMillisecond);

static void BM_ClosureSnDelta(benchmark::State &state) {
  for (auto _ : state) {
    auto g = build_sn_delta(5, 2, uint32_t(state.range(0)), std::nullopt);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_ClosureSnDelta)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
