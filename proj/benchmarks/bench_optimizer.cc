#include <benchmark/benchmark.h>

#include <random>

#include "partload/exact.h"
#include "partload/heuristics.h"
#include "partload/objective.h"
#include "partload/workload_io.h"

namespace partload {
namespace {

// SDSS-shaped instance: wide schema, mixed sizes, skewed weights.
struct Instance {
  CostParams params;
  Workload workload;
  double budget = 0;
};

Instance make_instance(int n, int m, double mean_width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  Instance inst;
  CostParams& p = inst.params;
  p.row_count = 1'000'000;
  p.bandwidth = 5e8;
  p.raw_size = 1.2e9 * n / 24.0;
  p.tokenization_mode = TokenizationMode::kPrefix;
  double total = 0;
  for (int j = 0; j < n; ++j) {
    const double spf = u(rng) < 0.5 ? 4.0 : 8.0;
    p.attributes.push_back({j, "c" + std::to_string(j), spf, 1e-9 + u(rng) * 2e-8,
                            2e-8 + u(rng) * 3e-7});
    total += spf * static_cast<double>(p.row_count);
  }
  inst.workload = gen_synthetic_workload(n, m, mean_width, mean_width, n, seed);
  for (Query& q : inst.workload.queries) q.weight = 0.1 + u(rng) * 10;
  inst.budget = 0.25 * total;
  return inst;
}

void BM_CombinedHeuristic(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 20, 6);
  const Objective obj(inst.params, inst.workload, EvalMode::kSerial);
  for (auto _ : state) benchmark::DoNotOptimize(combined(obj, inst.budget, {}));
}
BENCHMARK(BM_CombinedHeuristic)->Args({64, 20})->Args({509, 100})->Unit(benchmark::kMillisecond);

void BM_ObjectiveValue(benchmark::State& state) {
  const Instance inst = make_instance(509, 100, 20, 6);
  const Objective obj(inst.params, inst.workload, EvalMode::kSerial);
  AttributeSet loaded(509);
  for (int j = 0; j < 509; j += 4) loaded.insert(j);
  for (auto _ : state) benchmark::DoNotOptimize(obj.value(loaded));
}
BENCHMARK(BM_ObjectiveValue)->Unit(benchmark::kMicrosecond);

void BM_ExactSearch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make_instance(n, 8, 3, 9);
  const Objective obj(inst.params, inst.workload, EvalMode::kSerial);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(obj, inst.budget));
}
BENCHMARK(BM_ExactSearch)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace partload
