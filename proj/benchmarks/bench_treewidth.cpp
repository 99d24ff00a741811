#include <benchmark/benchmark.h>

#include "twlab/random_models.hpp"
#include "twlab/treewidth.hpp"

namespace {

using namespace twlab;

void BM_ExactTreewidthGnp(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto g = gen_gnp(n, 0.3, Seed{1, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_treewidth(g));
    }
}
BENCHMARK(BM_ExactTreewidthGnp)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_ExactTreewidthCliqueGraph(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto g = gen_clique_graph(n, n, 3, Seed{2, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_treewidth(g));
    }
}
BENCHMARK(BM_ExactTreewidthCliqueGraph)->DenseRange(12, 22, 5)->Unit(benchmark::kMillisecond);

void BM_GreedyOrder(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto g = gen_clique_graph(n, n, 3, Seed{3, 0});
    const auto heuristic = state.range(1) == 0 ? Heuristic::min_fill : Heuristic::min_degree;
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_order(g, heuristic));
    }
}
BENCHMARK(BM_GreedyOrder)->ArgsProduct({{100, 400, 1600}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FindBalancedPartition(benchmark::State& state)
{
    const auto g = gen_clique_graph(24, 40, 3, Seed{4, 0});
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_balanced_partition(g, k));
    }
}
BENCHMARK(BM_FindBalancedPartition)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

} // namespace
