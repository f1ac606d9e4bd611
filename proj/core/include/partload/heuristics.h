#pragma once

#include <vector>

#include "partload/objective.h"

namespace partload {

struct HeuristicConfig {
  // Budget step of the coverage/frequency sweep in bytes; 0 selects budget/10.
  double delta = 0;
  EvalMode mode = EvalMode::kSerial;
};

struct SweepPoint {
  double coverage_budget = 0;
  double objective = 0;
};

struct HeuristicResult {
  AttributeSet loaded;
  CostReport report;
  std::vector<SweepPoint> sweep;
};

// Greedy query coverage: repeatedly loads the uncovered query with the best
// objective reduction per newly loaded byte, skipping queries whose union
// would not fit, until no candidate reduces the objective.
AttributeSet query_coverage(const Objective& objective, double budget);

// Greedy attribute usage frequency: starting from `seeded`, repeatedly loads
// the single attribute with the largest objective reduction while it fits the
// total `budget`. Only strictly improving attributes are added. With
// `cpu_bound_only`, candidates are limited to attributes of currently
// cpu-bound queries.
AttributeSet attribute_frequency(const Objective& objective, double budget,
                                 const AttributeSet& seeded, bool cpu_bound_only = false);

// Sweeps the coverage share i = 0, delta, 2*delta, ..., budget; each point
// runs query coverage with i bytes, then attribute frequency with the rest
// of the full budget. Returns the first point with the minimum objective.
HeuristicResult combined(const Objective& objective, double budget, const HeuristicConfig& config);

// Pipelined variant: the frequency stage only considers attributes that
// appear in cpu-bound queries. The objective must be in pipelined mode.
HeuristicResult combined_pipelined(const Objective& objective, double budget,
                                   const HeuristicConfig& config);

// Convenience entry points that build the objective for `config.mode`.
HeuristicResult combined(const CostParams& params, const Workload& workload, double budget,
                         const HeuristicConfig& config);
HeuristicResult combined_pipelined(const CostParams& params, const Workload& workload,
                                   double budget, const HeuristicConfig& config);

// Budget offsets visited by the sweep (always includes 0 and budget).
std::vector<double> sweep_points(double budget, double delta);

}  // namespace partload
