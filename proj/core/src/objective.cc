#include "partload/objective.h"

namespace partload {

Objective::Objective(const CostParams& params, const Workload& workload, EvalMode mode)
    : model_(params), workload_(workload), mode_(mode) {
  if (mode == EvalMode::kPipelined) pt_ = parse_threshold(params);
  queries_with_.resize(params.num_attributes());
  for (std::size_t i = 0; i < workload_.queries.size(); ++i) {
    for (int a : workload_.queries[i].attrs) {
      queries_with_[static_cast<std::size_t>(a)].push_back(static_cast<int>(i));
    }
  }
}

QueryClass Objective::class_of(const PlanChoice& c) const {
  if (!c.reads_raw) return QueryClass::kCovered;
  if (mode_ == EvalMode::kPipelined) {
    return classify_parsed_count(static_cast<std::size_t>(c.parsed_count), pt_);
  }
  return c.terms.raw_read >= c.extraction() ? QueryClass::kIoBound : QueryClass::kCpuBound;
}

double Objective::value(const AttributeSet& loaded) const {
  double total = load_seconds(loaded);
  for (const Query& q : workload_.queries) {
    total += q.weight * seconds_of(choose_plan(model_, loaded, q.attrs));
  }
  return total;
}

CostReport Objective::report(const AttributeSet& loaded) const {
  CostReport r;
  r.mode = mode_;
  r.load_time = load_seconds(loaded);
  double total = r.load_time;
  for (const Query& q : workload_.queries) {
    const PlanChoice c = choose_plan(model_, loaded, q.attrs);
    QueryCost qc;
    qc.query_id = q.id;
    qc.weight = q.weight;
    qc.seconds = seconds_of(c);
    qc.terms = c.terms;
    qc.classification = class_of(c);
    total += q.weight * qc.seconds;
    r.per_query.push_back(std::move(qc));
  }
  r.objective = total;
  return r;
}

double Objective::query_seconds(std::size_t i, const AttributeSet& loaded) const {
  return seconds_of(choose_plan(model_, loaded, workload_.queries[i].attrs));
}

QueryClass Objective::query_class(std::size_t i, const AttributeSet& loaded) const {
  return class_of(choose_plan(model_, loaded, workload_.queries[i].attrs));
}

}  // namespace partload
