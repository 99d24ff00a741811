#include <benchmark/benchmark.h>

#include "twlab/random_models.hpp"
#include "twlab/solvers.hpp"
#include "twlab/treewidth.hpp"

namespace {

using namespace twlab;

// Solver cost against decomposition width, on CSPs over rbnbt moral graphs.
void BM_SolveCspTdByWidth(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const auto moral = moralize(gen_rbnbt(60, k, 0.0, Seed{5, 0}));
    std::vector<Constraint> constraints;
    CounterRng rng(Seed{5, 1});
    for (const auto& [u, v] : moral.edges()) {
        Constraint c{{u, v}, {}};
        for (std::uint64_t t = 0; t < 4; ++t) {
            if (rng.bernoulli(0.2)) {
                c.forbidden.push_back(t);
            }
        }
        constraints.push_back(std::move(c));
    }
    const CspInstance csp(60, 2, 2, std::move(constraints));
    const auto td = decomposition_from_order(moral, greedy_order(moral, Heuristic::min_fill));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_csp_td(csp, td));
    }
    state.counters["width"] = td.width();
}
BENCHMARK(BM_SolveCspTdByWidth)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_VeMarginal(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto b = fill_cpts(gen_rbnbt(n, 3, 0.2, Seed{6, 0}), 2, Seed{6, 1});
    const auto order = inference_order(b, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ve_marginal(b, 0, order));
    }
}
BENCHMARK(BM_VeMarginal)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

} // namespace
