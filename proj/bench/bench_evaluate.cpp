// Serial reference vs OpenMP batch evaluation over the full (n=6, k=3)
// solution space. "Cold" rebuilds the stage-model cache every iteration so
// training is included; "Warm" measures chains over cached models only.
#include <benchmark/benchmark.h>

#include <memory>

#include "bsc/dataset.hpp"
#include "bsc/objectives.hpp"
#include "bsc/oracle.hpp"
#include "bsc/parallel.hpp"

namespace {

const bsc::CostedDataset& instance() {
  static const bsc::CostedDataset data = [] {
    bsc::SyntheticSpec spec;
    spec.n_features = 6;
    spec.n_informative = 3;
    spec.n_records = 2000;
    spec.seed = 11;
    auto d = bsc::generate_synthetic(spec);
    bsc::attach(d, bsc::CostSchedule::explicit_costs({1, 2, 3, 4, 5, 6}), 3);
    return d;
  }();
  return data;
}

const std::vector<bsc::Chromosome>& batch() {
  static const auto all = bsc::enumerate_solutions(6, 3);
  return all;
}

void BM_Cold(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    bsc::ChainEvaluator evaluator(instance(), {0.75, 1.0, bsc::SplitPart::Validation});
    auto out = threads == 0 ? bsc::evaluate_batch_serial(evaluator, batch())
                            : bsc::evaluate_batch(evaluator, batch(), threads);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch().size()));
}

void BM_Warm(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  bsc::ChainEvaluator evaluator(instance(), {0.75, 1.0, bsc::SplitPart::Validation});
  (void)bsc::evaluate_batch_serial(evaluator, batch());
  for (auto _ : state) {
    auto out = threads == 0 ? bsc::evaluate_batch_serial(evaluator, batch())
                            : bsc::evaluate_batch(evaluator, batch(), threads);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch().size()));
}

} // namespace

// range(0): 0 = serial reference, otherwise OpenMP worker count
BENCHMARK(BM_Cold)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Warm)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
