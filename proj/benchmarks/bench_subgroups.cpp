#include <benchmark/benchmark.h>

#include "intenselab/constructions.hpp"
#include "intenselab/series.hpp"

using namespace ilab;

static void BM_AllSubgroupsYo(benchmark::State &state) {
  auto g = build_yo();
  for (auto _ : state) {
    auto subs = all_subgroups(*g);
    benchmark::DoNotOptimize(subs);
  }
}
BENCHMARK(BM_AllSubgroupsYo)->Unit(benchmark::kMillisecond);

static void BM_SeriesSnDelta(benchmark::State &state) {
  auto g = build_sn_delta(5, 2, 2, std::nullopt);
  for (auto _ : state) {
    auto s = series(*g);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_SeriesSnDelta)->Unit(benchmark::kMillisecond);
