#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "partload/heuristics.h"
#include "partload/model.h"

namespace partload {

// LoadPlan document written by the optimizers:
//   { "algorithm", "mode", "budget_bytes", "loaded": [names], "used_bytes",
//     "objective_sec", "sweep": [ {"coverage_budget", "objective_sec"} ],
//     "capped" }
struct PlanDocument {
  std::string algorithm;
  EvalMode mode = EvalMode::kSerial;
  double budget = 0;
  std::vector<std::string> loaded;
  double used_bytes = 0;
  double objective = 0;
  std::vector<SweepPoint> sweep;
  bool capped = false;
};

PlanDocument make_plan_document(const CostParams& params, std::string algorithm, EvalMode mode,
                                double budget, const AttributeSet& loaded, double objective);

std::string serialize_plan(const PlanDocument& plan);
// Error(kInvalidInput) on malformed documents.
PlanDocument parse_plan(std::string_view document);
// Resolves names against params (Error kInvalidInput on unknown names).
AttributeSet plan_attributes(const PlanDocument& plan, const CostParams& params);

// Shortest round-trip decimal form, used for every printed objective.
std::string format_seconds(double seconds);

}  // namespace partload
