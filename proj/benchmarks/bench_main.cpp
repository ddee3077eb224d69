#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "solarcast/distribution.hpp"
#include "solarcast/ngboost.hpp"
#include "solarcast/rng.hpp"
#include "solarcast/tree.hpp"

using namespace solarcast;

namespace {

std::vector<double> random_samples(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = rng.uniform(-5, 5);
    return out;
}

void BM_EnsembleCrps(benchmark::State& state) {
    const EnsembleDist d(random_samples(static_cast<std::size_t>(state.range(0)), 1));
    double y = 0.123;
    for (auto _ : state) {
        benchmark::DoNotOptimize(d.crps(y));
        y += 1e-9;
    }
}
BENCHMARK(BM_EnsembleCrps)->Arg(16)->Arg(256)->Arg(4096);

void BM_GaussianCrps(benchmark::State& state) {
    const GaussianDist d(0.4, 0.12);
    double y = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(d.crps(y));
        y += 1e-9;
    }
}
BENCHMARK(BM_GaussianCrps);

void BM_TreeFit(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    Matrix X(n, 13);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 13; ++j) X(i, j) = rng.uniform(0, 1);
        y[i] = X(i, 0) + 0.5 * X(i, 3) + 0.1 * rng.normal();
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(fit_tree(X, y, 3, 1));
}
BENCHMARK(BM_TreeFit)->Arg(1000)->Arg(10000);

void BM_NgboostFit(benchmark::State& state) {
    Rng rng(3);
    const std::size_t n = 2000;
    Matrix X(n, 13);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 13; ++j) X(i, j) = rng.uniform(0, 1);
        y[i] = std::sin(5.0 * X(i, 0)) + (0.1 + 0.3 * X(i, 1)) * rng.normal();
    }
    NGBoostConfig cfg;
    cfg.n_estimators = static_cast<int>(state.range(0));
    cfg.learning_rate = 0.05;
    for (auto _ : state)
        benchmark::DoNotOptimize(ngboost_fit(X, y, cfg));
}
BENCHMARK(BM_NgboostFit)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
