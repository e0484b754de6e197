#include <benchmark/benchmark.h>

#include "lacuna/periodic.hpp"

using namespace lacuna;

static void BM_CorrelationExact(benchmark::State& state) {
    const StepFunction f = centered_indicator(mpq_class(1, 3), mpq_class(7, 9));
    const mpz_class n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(correlation_exact(f, n));
}
BENCHMARK(BM_CorrelationExact)->Arg(2)->Arg(1 << 12)->Arg(1 << 24);

static void BM_SupSigmaGrid(benchmark::State& state) {
    for (auto _ : state) {
        auto r = sup_sigma_over_intervals(2, 16, static_cast<std::uint64_t>(state.range(0)),
                                          {}, 2);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SupSigmaGrid)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
