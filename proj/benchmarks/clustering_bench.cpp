#include <benchmark/benchmark.h>

#include "hypefcm/baselines.hpp"
#include "hypefcm/dataset.hpp"
#include "hypefcm/embedding.hpp"
#include "hypefcm/hypefcm.hpp"

using namespace hypefcm;

static void BM_Embed(benchmark::State& state) {
    auto data = gen_blobs(static_cast<std::size_t>(state.range(0)), 4, 2, 8.0, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(embed(data.features, Curvature(1.0)));
}
BENCHMARK(BM_Embed)->Arg(1000)->Arg(4000);

static void BM_HypeFcmIteration(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    auto data = gen_blobs(n, 4, 2, 8.0, 5);
    auto points = embed(data.features, Curvature(1.0));
    Matrix w = init_weights(n, 4, 3);
    std::vector<BallPoint> centroids(points.begin(), points.begin() + 4);
    for (auto _ : state) {
        auto v = update_centroids(points, w, centroids, 2.0);
        auto d = compute_distances(points, v);
        apply_filtration(d, 16, FiltrationMode::per_centroid);
        benchmark::DoNotOptimize(update_weights(d, 2.0));
    }
}
BENCHMARK(BM_HypeFcmIteration)->Arg(512)->Arg(2048);

static void BM_Filtration(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    auto data = gen_blobs(n, 4, 2, 8.0, 5);
    auto points = embed(data.features, Curvature(1.0));
    std::vector<BallPoint> centroids(points.begin(), points.begin() + 4);
    auto d = compute_distances(points, centroids);
    for (auto _ : state) {
        auto copy = d;
        apply_filtration(copy, 16, FiltrationMode::per_centroid);
        benchmark::DoNotOptimize(copy);
    }
}
BENCHMARK(BM_Filtration)->Arg(1024)->Arg(4096);

static void BM_FcmFullRun(benchmark::State& state) {
    auto data = gen_blobs(static_cast<std::size_t>(state.range(0)), 4, 2, 8.0, 5);
    FcmConfig cfg;
    cfg.clusters = 4;
    cfg.max_iters = 50;
    cfg.seed = 9;
    for (auto _ : state)
        benchmark::DoNotOptimize(fcm_run(data.features, cfg));
}
BENCHMARK(BM_FcmFullRun)->Arg(512)->Arg(2048);

BENCHMARK_MAIN();
