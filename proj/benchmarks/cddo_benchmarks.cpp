#include <benchmark/benchmark.h>

#include "cddo/harness.hpp"
#include "cddo/optimizer.hpp"

using namespace cddo;
using suite::FunctionId;

static void BM_Step(benchmark::State& state) {
    const auto spec = suite::spec_of(FunctionId::F1, static_cast<std::size_t>(state.range(0)));
    const auto objective = suite::make_objective(FunctionId::F1);
    OptimizerConfig config;
    RandomStream rng(1);
    auto s = init_state(objective, spec.space, config, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cddo_step(s, objective, spec.space, config, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.agents));
}
BENCHMARK(BM_Step)->Arg(2)->Arg(30)->Arg(100);

static void BM_Evaluate(benchmark::State& state) {
    const auto id = static_cast<FunctionId>(state.range(0));
    const auto spec = suite::spec_of(id);
    RandomStream rng(2);
    Position x(spec.dim);
    for (std::size_t k = 0; k < spec.dim; ++k) {
        x[k] = rng.uniform(spec.space.lower()[k], spec.space.upper()[k]);
    }
    for (auto _ : state) benchmark::DoNotOptimize(suite::evaluate(id, x));
    state.SetLabel(suite::to_string(id));
}
BENCHMARK(BM_Evaluate)->DenseRange(1, suite::kFunctionCount);

static void BM_Optimize(benchmark::State& state) {
    const auto id = static_cast<FunctionId>(state.range(0));
    OptimizerConfig config;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(harness::run_trial(id, suite::kDefaultScalableDim, config, seed++));
    }
    state.SetLabel(suite::to_string(id));
}
BENCHMARK(BM_Optimize)->Arg(1)->Arg(9)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_RankFixture(benchmark::State& state) {
    harness::AverageTable table;
    RandomStream rng(3);
    for (FunctionId id : suite::all_functions()) {
        for (const char* alg : {"A", "B", "C", "D", "E", "F"}) table.set(id, alg, rng.uniform01());
    }
    const auto groups = harness::standard_groups();
    for (auto _ : state) benchmark::DoNotOptimize(harness::rank_algorithms(table, groups, "A"));
}
BENCHMARK(BM_RankFixture);

BENCHMARK_MAIN();
