#include <benchmark/benchmark.h>

#include "hyperlab/components.hpp"
#include "hyperlab/experiments.hpp"
#include "hyperlab/hypergraph.hpp"

using namespace hyperlab;

namespace {

const Hypergraph& dense_graph() {
  static const Hypergraph h = sample_hypergraph(300, 4, 2e-4, 11);
  return h;
}

ExperimentConfig bench_config() {
  ExperimentConfig c;
  c.n = 250;
  c.k = 3;
  c.j = 2;
  c.epsilon = 0.3;
  c.trials = 64;
  c.base_seed = 3;
  return c;
}

void BM_CollectJsetsSerial(benchmark::State& state) {
  const Hypergraph& h = dense_graph();
  for (auto _ : state) benchmark::DoNotOptimize(detail::collect_jset_ranks(h, 2, false));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.edge_count()));
}

void BM_CollectJsetsParallel(benchmark::State& state) {
  const Hypergraph& h = dense_graph();
  for (auto _ : state) benchmark::DoNotOptimize(detail::collect_jset_ranks(h, 2, true));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.edge_count()));
}

void BM_JComponents(benchmark::State& state) {
  const Hypergraph& h = dense_graph();
  for (auto _ : state) benchmark::DoNotOptimize(j_components(h, 2));
}

void BM_ExperimentSerial(benchmark::State& state) {
  const ExperimentConfig c = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
}

void BM_ExperimentParallel(benchmark::State& state) {
  const ExperimentConfig c = bench_config();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
}

}  // namespace

BENCHMARK(BM_CollectJsetsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollectJsetsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JComponents)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
