#include <benchmark/benchmark.h>

#include "mlc/candidate_lists.hpp"
#include "mlc/constructive.hpp"
#include "mlc/delaunay.hpp"
#include "mlc/features.hpp"
#include "mlc/instance.hpp"

using namespace mlc;

static void BM_KnnCandidateLists(benchmark::State& state) {
    Instance inst = random_instance(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        CandidateLists cl = knn_candidate_lists(inst, 5);
        benchmark::DoNotOptimize(cl.lists.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KnnCandidateLists)->Arg(200)->Arg(999)->Arg(2000)->Arg(8000)->Complexity();

static void BM_DelaunayTriangulate(benchmark::State& state) {
    Instance inst = random_instance(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) {
        Triangulation tri = delaunay_triangulate(inst);
        benchmark::DoNotOptimize(tri.triangles.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DelaunayTriangulate)->Arg(200)->Arg(2000)->Arg(8000)->Complexity();

static void BM_PromisingList(benchmark::State& state) {
    Instance inst = random_instance(static_cast<int>(state.range(0)), 13);
    CandidateLists cl = knn_candidate_lists(inst, 5);
    for (auto _ : state) {
        PromisingList lp = build_promising_list(inst, cl);
        benchmark::DoNotOptimize(lp.entries.data());
    }
}
BENCHMARK(BM_PromisingList)->Arg(2000);

static void BM_BuildFeatures(benchmark::State& state) {
    Instance inst = random_instance(1000, 17);
    CandidateLists cl = knn_candidate_lists(inst, 5);
    PartialSolution partial(inst.size());
    int node = 0;
    for (auto _ : state) {
        FeatureVector f = build_features(inst, cl, partial, node);
        benchmark::DoNotOptimize(f.data());
        node = (node + 1) % inst.size();
    }
}
BENCHMARK(BM_BuildFeatures);

static void BM_SolveNn(benchmark::State& state) {
    Instance inst = random_instance(static_cast<int>(state.range(0)), 19);
    SolveConfig cfg;
    cfg.policy = nn_policy();
    for (auto _ : state) {
        SolveResult r = solve(inst, cfg);
        benchmark::DoNotOptimize(r.length);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveNn)->Arg(200)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_SolveNnNoPhase3(benchmark::State& state) {
    Instance inst = random_instance(static_cast<int>(state.range(0)), 19);
    SolveConfig cfg;
    cfg.policy = nn_policy();
    cfg.phase3 = false;
    for (auto _ : state) {
        SolveResult r = solve(inst, cfg);
        benchmark::DoNotOptimize(r.length);
    }
}
BENCHMARK(BM_SolveNnNoPhase3)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
