#include <benchmark/benchmark.h>

#include "entrocone/shannon.hpp"

static void BM_Elementals(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(entrocone::elemental_inequalities(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Elementals)->Arg(3)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
