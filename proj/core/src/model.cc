#include "partload/model.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "partload/errors.h"

namespace partload {

std::string_view to_string(TokenizationMode mode) {
  switch (mode) {
    case TokenizationMode::kPrefix: return "prefix";
    case TokenizationMode::kAtomic: return "atomic";
    case TokenizationMode::kNone: return "none";
  }
  return "?";
}

TokenizationMode tokenization_mode_from_string(std::string_view text) {
  if (text == "prefix") return TokenizationMode::kPrefix;
  if (text == "atomic") return TokenizationMode::kAtomic;
  if (text == "none") return TokenizationMode::kNone;
  fail(ErrorKind::kInvalidInput, "unknown tokenization_mode '" + std::string(text) + "'");
}

std::string_view to_string(QueryClass c) {
  switch (c) {
    case QueryClass::kCovered: return "covered";
    case QueryClass::kIoBound: return "io-bound";
    case QueryClass::kCpuBound: return "cpu-bound";
  }
  return "?";
}

std::string_view to_string(EvalMode mode) {
  return mode == EvalMode::kSerial ? "serial" : "pipelined";
}

EvalMode eval_mode_from_string(std::string_view text) {
  if (text == "serial") return EvalMode::kSerial;
  if (text == "pipelined") return EvalMode::kPipelined;
  fail(ErrorKind::kInvalidInput, "unknown mode '" + std::string(text) + "'");
}

int CostParams::find(std::string_view name) const {
  for (const Attribute& a : attributes) {
    if (a.name == name) return a.index;
  }
  return -1;
}

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0; }

}  // namespace

void validate(const CostParams& params) {
  if (params.row_count == 0) fail(ErrorKind::kInvalidInput, "row_count must be positive");
  if (!(params.raw_size > 0) || !std::isfinite(params.raw_size)) {
    fail(ErrorKind::kInvalidInput, "raw_size_bytes must be positive");
  }
  if (!(params.bandwidth > 0) || !std::isfinite(params.bandwidth)) {
    fail(ErrorKind::kInvalidInput, "bandwidth_bytes_per_sec must be positive");
  }
  std::set<std::string> names;
  for (std::size_t j = 0; j < params.attributes.size(); ++j) {
    const Attribute& a = params.attributes[j];
    if (a.index != static_cast<int>(j)) {
      fail(ErrorKind::kInvalidInput, "attribute index does not match its position: " + a.name);
    }
    if (!(a.spf > 0) || !std::isfinite(a.spf)) {
      fail(ErrorKind::kInvalidInput, "spf_bytes must be positive for attribute " + a.name);
    }
    if (!finite_nonneg(a.t_tok) || !finite_nonneg(a.t_parse)) {
      fail(ErrorKind::kInvalidInput, "negative or non-finite time for attribute " + a.name);
    }
    if (params.tokenization_mode == TokenizationMode::kNone && a.t_tok != 0) {
      fail(ErrorKind::kInvalidInput,
           "tokenization_mode none requires t_tok_sec = 0 (attribute " + a.name + ")");
    }
    if (!names.insert(a.name).second) {
      fail(ErrorKind::kInvalidInput, "duplicate attribute name " + a.name);
    }
  }
}

void validate(Workload& workload, const CostParams& params) {
  const int n = static_cast<int>(params.num_attributes());
  std::set<std::vector<int>> seen;
  for (Query& q : workload.queries) {
    if (q.attrs.empty()) fail(ErrorKind::kInvalidInput, "query " + q.id + " has no attributes");
    std::sort(q.attrs.begin(), q.attrs.end());
    q.attrs.erase(std::unique(q.attrs.begin(), q.attrs.end()), q.attrs.end());
    if (q.attrs.front() < 0 || q.attrs.back() >= n) {
      fail(ErrorKind::kInvalidInput, "query " + q.id + " references an unknown attribute");
    }
    if (!finite_nonneg(q.weight)) {
      fail(ErrorKind::kInvalidInput, "query " + q.id + " has a negative weight");
    }
    if (!seen.insert(q.attrs).second) {
      fail(ErrorKind::kInvalidInput,
           "query " + q.id + " duplicates the attribute set of an earlier query");
    }
  }
}

AttributeSet referenced_attributes(const Workload& workload, std::size_t universe) {
  AttributeSet s(universe);
  for (const Query& q : workload.queries) {
    for (int a : q.attrs) s.insert(a);
  }
  return s;
}

double bytes_of(const CostParams& params, const AttributeSet& set) {
  double spf = 0;
  set.for_each([&](int j) { spf += params.attributes[static_cast<std::size_t>(j)].spf; });
  return static_cast<double>(params.row_count) * spf;
}

LoadPlan make_load_plan(const CostParams& params, AttributeSet loaded, double budget) {
  LoadPlan plan;
  plan.used_bytes = bytes_of(params, loaded);
  plan.budget = budget;
  plan.loaded = std::move(loaded);
  if (!within_budget(plan.used_bytes, budget)) {
    fail(ErrorKind::kBudgetViolation,
         "load set needs " + std::to_string(plan.used_bytes) + " bytes but the budget is " +
             std::to_string(budget));
  }
  return plan;
}

}  // namespace partload
