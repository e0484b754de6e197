#include <benchmark/benchmark.h>

#include "lacuna/unit_fraction.hpp"

using namespace lacuna;

static void BM_SampleUnit(benchmark::State& state) {
    const long p = state.range(0);
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_unit(1, i++, p));
}
BENCHMARK(BM_SampleUnit)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

static void BM_FracMul(benchmark::State& state) {
    const long p = state.range(0);
    const UnitFraction x = sample_unit(1, 0, p);
    mpz_class n = (mpz_class(1) << (p - 80)) + 12345;
    for (auto _ : state) benchmark::DoNotOptimize(frac_mul(n, x));
}
BENCHMARK(BM_FracMul)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

static void BM_FracShiftWindow(benchmark::State& state) {
    const long p = state.range(0);
    const UnitFraction x = sample_unit(1, 0, p);
    long k = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(frac_shift_top64(x, k));
        k = (k * 7 + 1) % (p - 64);
        if (k < 1) k = 1;
    }
}
BENCHMARK(BM_FracShiftWindow)->Arg(1 << 10)->Arg(1 << 17)->Arg(1 << 22);
