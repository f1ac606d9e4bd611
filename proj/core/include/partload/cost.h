#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "partload/model.h"

namespace partload {

// Per-attribute cost terms of one CostParams instance, pre-multiplied into
// seconds so that plan search and objective evaluation are sums of lookups.
class CostModel {
 public:
  explicit CostModel(const CostParams& params);

  const CostParams& params() const { return params_; }
  std::size_t num_attributes() const { return parse_.size(); }
  TokenizationMode mode() const { return params_.tokenization_mode; }

  // S_RAW / band_IO
  double raw_seconds() const { return raw_; }
  // |R| * T_p_j
  double parse_seconds(int j) const { return parse_[static_cast<std::size_t>(j)]; }
  // |R| * SPF_j / band_IO (reading or writing one loaded column)
  double read_seconds(int j) const { return read_[static_cast<std::size_t>(j)]; }
  // |R| * sum_{k <= e} T_t_k; zero for e < 0.
  double tokenize_through(int e) const {
    return e < 0 ? 0.0 : tok_prefix_[static_cast<std::size_t>(e)];
  }
  double tokenize_all() const { return tokenize_through(static_cast<int>(parse_.size()) - 1); }

 private:
  CostParams params_;
  double raw_ = 0;
  std::vector<double> parse_;
  std::vector<double> read_;
  std::vector<double> tok_prefix_;
};

// Closed-form outcome of the cheapest serial plan for one query.
struct PlanChoice {
  bool reads_raw = false;
  // Last tokenized position when reads_raw (n-1 under atomic/none), else -1.
  int tokenize_end = -1;
  int parsed_count = 0;
  TermBreakdown terms;

  double extraction() const { return terms.tokenize + terms.parse; }
  double serial_seconds() const {
    return terms.raw_read + terms.tokenize + terms.parse + terms.loaded_read;
  }
  double pipelined_seconds() const {
    const double raw = terms.raw_read;
    const double cpu = extraction();
    return terms.loaded_read + (raw > cpu ? raw : cpu);
  }
};

// Minimum serial-cost plan for a query (attrs ascending) over `loaded`.
// A loaded needed attribute located at or before the tokenize endpoint is
// parsed iff parsing is strictly cheaper than reading its column; every
// candidate endpoint is scanned in O(|attrs|).
PlanChoice choose_plan(const CostModel& model, const AttributeSet& loaded,
                       std::span<const int> attrs);

QueryPlan derive_query_plan(const CostModel& model, const AttributeSet& loaded, const Query& query);
QueryPlan derive_query_plan(const CostParams& params, const LoadPlan& loaded, const Query& query);

// T_load: zero when nothing is saved.
double load_time(const CostModel& model, const AttributeSet& loaded);
// Throws Error(kBudgetViolation) if the plan breaks its storage bound.
double load_time(const CostParams& params, const LoadPlan& loaded);

// Direct evaluation of the serial per-query time of an explicit plan.
double query_time_serial(const CostParams& params, const QueryPlan& plan);

// Number of attributes parseable while the raw file is read once.
struct ParseThreshold {
  std::uint64_t pt = 0;
  bool unbounded = false;  // no parse cost at all: every query is io-bound

  static ParseThreshold of(std::uint64_t value) { return {value, false}; }
  static ParseThreshold infinite() { return {std::numeric_limits<std::uint64_t>::max(), true}; }
  friend bool operator==(const ParseThreshold&, const ParseThreshold&) = default;
};

// Requires atomic or none tokenization; Error(kModeUnsupported) otherwise.
ParseThreshold parse_threshold(const CostParams& params);

// cpu-bound iff |parsed| >= pt. Plans that do not read raw data are covered.
QueryClass classify_query(const QueryPlan& plan, ParseThreshold pt);
QueryClass classify_parsed_count(std::size_t parsed, ParseThreshold pt);

// Max form: loaded reads plus the larger of raw access and extraction.
double query_time_pipelined(const CostParams& params, const QueryPlan& plan, ParseThreshold pt);
// Linearized form: the classification selects which side is charged.
double query_time_pipelined_linearized(const CostParams& params, const QueryPlan& plan,
                                       ParseThreshold pt);

CostReport objective_serial(const CostParams& params, const Workload& workload,
                            const LoadPlan& loaded);
CostReport objective_pipelined(const CostParams& params, const Workload& workload,
                               const LoadPlan& loaded);

// JSON document with the per-query term breakdown.
std::string report_to_json(const CostReport& report);
// "query_index,cumulative_sec": row 0 is the load, row i adds query i
// (unweighted, one execution each).
std::string report_to_cumulative_csv(const CostReport& report);

}  // namespace partload
