#pragma once

#include <cstddef>
#include <vector>

#include "partload/cost.h"
#include "partload/model.h"

namespace partload {

// Workload objective T_load + sum_i w_i * T_i for a candidate load set, in
// either evaluation mode. Every optimizer and the reporting functions go
// through value()/report(), so a set evaluates to the same double everywhere.
class Objective {
 public:
  // Pipelined mode requires atomic or none tokenization (kModeUnsupported).
  Objective(const CostParams& params, const Workload& workload, EvalMode mode);

  EvalMode mode() const { return mode_; }
  const CostModel& model() const { return model_; }
  const CostParams& params() const { return model_.params(); }
  const Workload& workload() const { return workload_; }
  std::size_t num_attributes() const { return model_.num_attributes(); }
  std::size_t num_queries() const { return workload_.queries.size(); }
  // Only meaningful in pipelined mode.
  ParseThreshold threshold() const { return pt_; }

  double value(const AttributeSet& loaded) const;
  CostReport report(const AttributeSet& loaded) const;

  double load_seconds(const AttributeSet& loaded) const { return load_time(model_, loaded); }
  // Unweighted time of query i under the governing mode.
  double query_seconds(std::size_t i, const AttributeSet& loaded) const;
  QueryClass query_class(std::size_t i, const AttributeSet& loaded) const;

  // Indices of the queries that reference attribute j.
  const std::vector<int>& queries_with(int j) const {
    return queries_with_[static_cast<std::size_t>(j)];
  }

  double bytes(const AttributeSet& set) const { return bytes_of(params(), set); }

 private:
  double seconds_of(const PlanChoice& c) const {
    return mode_ == EvalMode::kSerial ? c.serial_seconds() : c.pipelined_seconds();
  }
  QueryClass class_of(const PlanChoice& c) const;

  CostModel model_;
  Workload workload_;
  EvalMode mode_;
  ParseThreshold pt_;
  std::vector<std::vector<int>> queries_with_;
};

}  // namespace partload
