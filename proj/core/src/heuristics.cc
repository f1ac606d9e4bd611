#include "partload/heuristics.h"

#include <algorithm>
#include <cmath>

#include "partload/errors.h"

namespace partload {

namespace {

constexpr double kMaxSweepPoints = 10000;

// Running T_load terms, so a candidate attribute's load delta is O(1).
struct LoadSums {
  double parse = 0;
  double write = 0;
  int last = -1;

  void add(const CostModel& m, int j) {
    parse += m.parse_seconds(j);
    write += m.read_seconds(j);
    last = std::max(last, j);
  }
  double seconds_with(const CostModel& m, int j) const {
    const int end = std::max(last, j);
    const double tok =
        m.mode() == TokenizationMode::kPrefix ? m.tokenize_through(end) : m.tokenize_all();
    return m.raw_seconds() + tok + (parse + m.parse_seconds(j)) + (write + m.read_seconds(j));
  }
};

}  // namespace

AttributeSet query_coverage(const Objective& objective, double budget) {
  const Workload& w = objective.workload();
  const std::size_t m = w.queries.size();
  AttributeSet loaded(objective.num_attributes());
  std::vector<bool> covered(m, false);
  double current = objective.value(loaded);
  double used = 0;

  while (used < budget) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!covered[i] && loaded.contains_all(w.queries[i].attrs)) covered[i] = true;
    }
    int best = -1;
    double best_score = 0;
    double best_reduction = 0;
    double best_value = 0;
    AttributeSet best_set;
    for (std::size_t i = 0; i < m; ++i) {
      if (covered[i]) continue;
      AttributeSet candidate = loaded;
      for (int a : w.queries[i].attrs) candidate.insert(a);
      const double bytes = objective.bytes(candidate);
      if (!within_budget(bytes, budget)) continue;
      const double added = bytes - used;
      const double value = objective.value(candidate);
      const double reduction = current - value;
      const double score = reduction / added;
      if (best < 0 || score > best_score) {
        best = static_cast<int>(i);
        best_score = score;
        best_reduction = reduction;
        best_value = value;
        best_set = std::move(candidate);
      }
    }
    if (best < 0 || best_reduction <= 0) break;
    covered[static_cast<std::size_t>(best)] = true;
    loaded = std::move(best_set);
    current = best_value;
    used = objective.bytes(loaded);
  }
  return loaded;
}

AttributeSet attribute_frequency(const Objective& objective, double budget,
                                 const AttributeSet& seeded, bool cpu_bound_only) {
  const Workload& w = objective.workload();
  const CostModel& model = objective.model();
  const std::size_t n = objective.num_attributes();
  const std::size_t m = w.queries.size();

  AttributeSet loaded = seeded;
  double used = objective.bytes(loaded);
  double current = objective.value(loaded);
  LoadSums sums;
  loaded.for_each([&](int j) { sums.add(model, j); });
  const double base_load = objective.load_seconds(loaded);
  double load_now = base_load;

  std::vector<double> query_now(m);
  for (std::size_t i = 0; i < m; ++i) query_now[i] = objective.query_seconds(i, loaded);

  while (used < budget) {
    std::vector<bool> eligible(n, true);
    if (cpu_bound_only) {
      std::fill(eligible.begin(), eligible.end(), false);
      for (std::size_t i = 0; i < m; ++i) {
        if (objective.query_class(i, loaded) != QueryClass::kCpuBound) continue;
        for (int a : w.queries[i].attrs) eligible[static_cast<std::size_t>(a)] = true;
      }
    }

    int best = -1;
    double best_gain = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const int a = static_cast<int>(j);
      if (!eligible[j] || loaded.contains(a) || objective.queries_with(a).empty()) continue;
      if (!within_budget(used + objective.params().column_bytes(a), budget)) continue;
      loaded.insert(a);
      double delta = sums.seconds_with(model, a) - load_now;
      for (int i : objective.queries_with(a)) {
        const auto qi = static_cast<std::size_t>(i);
        delta += w.queries[qi].weight * (objective.query_seconds(qi, loaded) - query_now[qi]);
      }
      loaded.erase(a);
      const double gain = -delta;
      if (best < 0 || gain > best_gain) {
        best = a;
        best_gain = gain;
      }
    }
    if (best < 0 || best_gain <= 0) break;

    AttributeSet next = loaded;
    next.insert(best);
    const double next_value = objective.value(next);
    if (!(next_value < current)) break;

    loaded = std::move(next);
    current = next_value;
    used = objective.bytes(loaded);
    load_now = sums.seconds_with(model, best);
    sums.add(model, best);
    for (int i : objective.queries_with(best)) {
      const auto qi = static_cast<std::size_t>(i);
      query_now[qi] = objective.query_seconds(qi, loaded);
    }
  }
  return loaded;
}

std::vector<double> sweep_points(double budget, double delta) {
  if (!(budget > 0)) return {0.0};
  if (delta <= 0) delta = budget / 10.0;
  if (delta > budget * (1 + 1e-12)) {
    fail(ErrorKind::kInvalidInput, "delta must not exceed the budget");
  }
  if (budget / delta > kMaxSweepPoints) {
    fail(ErrorKind::kInvalidInput, "budget/delta is too large for the sweep");
  }
  std::vector<double> points;
  for (long k = 0;; ++k) {
    const double i = static_cast<double>(k) * delta;
    if (!within_budget(i, budget)) break;
    points.push_back(std::min(i, budget));
  }
  if (points.back() < budget) points.push_back(budget);
  return points;
}

namespace {

HeuristicResult sweep(const Objective& objective, double budget, const HeuristicConfig& config,
                      bool cpu_bound_only) {
  HeuristicResult result;
  bool have = false;
  double best = 0;
  for (double i : sweep_points(budget, config.delta)) {
    const AttributeSet coverage = query_coverage(objective, i);
    const AttributeSet loaded = attribute_frequency(objective, budget, coverage, cpu_bound_only);
    const double value = objective.value(loaded);
    result.sweep.push_back({i, value});
    if (!have || value < best) {
      have = true;
      best = value;
      result.loaded = loaded;
    }
  }
  result.report = objective.report(result.loaded);
  return result;
}

}  // namespace

HeuristicResult combined(const Objective& objective, double budget, const HeuristicConfig& config) {
  return sweep(objective, budget, config, false);
}

HeuristicResult combined_pipelined(const Objective& objective, double budget,
                                   const HeuristicConfig& config) {
  if (objective.mode() != EvalMode::kPipelined) {
    fail(ErrorKind::kModeUnsupported, "combined_pipelined needs a pipelined objective");
  }
  return sweep(objective, budget, config, true);
}

HeuristicResult combined(const CostParams& params, const Workload& workload, double budget,
                         const HeuristicConfig& config) {
  const Objective objective(params, workload, config.mode);
  if (config.mode == EvalMode::kPipelined) return combined_pipelined(objective, budget, config);
  return combined(objective, budget, config);
}

HeuristicResult combined_pipelined(const CostParams& params, const Workload& workload,
                                   double budget, const HeuristicConfig& config) {
  const Objective objective(params, workload, EvalMode::kPipelined);
  return combined_pipelined(objective, budget, config);
}

}  // namespace partload
