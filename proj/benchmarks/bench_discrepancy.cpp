#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lacuna/discrepancy.hpp"

using namespace lacuna;

static std::vector<double> random_points(std::size_t n) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = unif(rng);
    return v;
}

static void BM_ExtremeDiscrepancy(benchmark::State& state) {
    const PointSet ps(random_points(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(extreme_discrepancy(ps));
}
BENCHMARK(BM_ExtremeDiscrepancy)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

static void BM_PrefixTrail(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)));
    const auto cps = geometric_checkpoints(pts.size(), 1.0905077326652577);
    for (auto _ : state) {
        auto rows = prefix_discrepancies([&](std::size_t k) { return pts[k - 1]; },
                                         pts.size(), cps);
        benchmark::DoNotOptimize(rows);
    }
}
BENCHMARK(BM_PrefixTrail)->Arg(1 << 10)->Arg(1 << 13);
