#include <benchmark/benchmark.h>

#include "lacuna/diophantine.hpp"
#include "lacuna/sequences.hpp"

using namespace lacuna;

static void BM_CountSolutions(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerSequence seq = gen_power_minus_one(2, n);
    const DiophQuery q{1, -2, 1, n};
    for (auto _ : state) benchmark::DoNotOptimize(count_solutions(seq, q));
}
BENCHMARK(BM_CountSolutions)->Arg(100)->Arg(1000);

static void BM_BruteForceCount(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerSequence seq = gen_power_minus_one(2, n);
    const DiophQuery q{1, -2, 1, n};
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_count(seq, q));
}
BENCHMARK(BM_BruteForceCount)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_MaxMultiplicity(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerSequence seq = gen_power(2, n);
    for (auto _ : state) benchmark::DoNotOptimize(max_multiplicity(seq, 1, -2, n));
}
BENCHMARK(BM_MaxMultiplicity)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
