#include <benchmark/benchmark.h>

#include "intenselab/constructions.hpp"
#include "intenselab/intensity.hpp"

using namespace ilab;

static void BM_IntensityHeisenberg(benchmark::State &state) {
  auto g = build_extraspecial(3, 1, "p");
  for (auto _ : state) {
    auto rep = intensity(g);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_IntensityHeisenberg)->Unit(benchmark::kMillisecond);

static void BM_IntensityYo(benchmark::State &state) {
  auto g = build_yo();
  for (auto _ : state) {
    auto rep = intensity(g);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_IntensityYo)->Unit(benchmark::kMillisecond);
