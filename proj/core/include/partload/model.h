#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "partload/attribute_set.h"

namespace partload {

// How a raw record exposes attribute positions.
//   kPrefix: delimited text; locating attribute j requires locating 0..j-1.
//   kAtomic: the whole record is tokenized whenever it is touched (JSON).
//   kNone:   fixed layout, no tokenization (binary); every t_tok is zero.
enum class TokenizationMode { kPrefix, kAtomic, kNone };

std::string_view to_string(TokenizationMode mode);
TokenizationMode tokenization_mode_from_string(std::string_view text);

struct Attribute {
  int index = 0;         // position in raw-file order
  std::string name;
  double spf = 0;        // bytes per value in the processing representation
  double t_tok = 0;      // seconds to tokenize one value
  double t_parse = 0;    // seconds to parse one value
};

struct CostParams {
  std::vector<Attribute> attributes;
  std::uint64_t row_count = 0;
  double raw_size = 0;   // bytes
  double bandwidth = 0;  // bytes per second
  TokenizationMode tokenization_mode = TokenizationMode::kPrefix;

  std::size_t num_attributes() const { return attributes.size(); }
  // Bytes one loaded column occupies: |R| * SPF_j.
  double column_bytes(int j) const {
    return static_cast<double>(row_count) * attributes[static_cast<std::size_t>(j)].spf;
  }
  // Position of the attribute with this name, or -1.
  int find(std::string_view name) const;
};

// Throws Error(kInvalidInput) on any violated invariant.
void validate(const CostParams& params);

struct Query {
  std::string id;
  std::vector<int> attrs;  // ascending, unique, nonempty
  double weight = 1.0;
};

struct Workload {
  std::vector<Query> queries;

  std::size_t size() const { return queries.size(); }
  bool empty() const { return queries.empty(); }
};

// Checks attribute ranges, nonempty queries, nonnegative weights and that no
// two queries access the same attribute set. Normalizes attrs to ascending.
void validate(Workload& workload, const CostParams& params);

// Attributes referenced by at least one query.
AttributeSet referenced_attributes(const Workload& workload, std::size_t universe);

double bytes_of(const CostParams& params, const AttributeSet& set);

// Storage bound test shared by every algorithm; absorbs summation-order
// rounding (one part in 1e12).
inline bool within_budget(double used_bytes, double budget) {
  return used_bytes <= budget + 1e-12 * (budget > 1 ? budget : 1);
}

struct LoadPlan {
  AttributeSet loaded;
  double used_bytes = 0;
  double budget = 0;
};

// Builds a plan and enforces the storage bound (Error kBudgetViolation).
LoadPlan make_load_plan(const CostParams& params, AttributeSet loaded, double budget);

enum class QueryClass { kCovered, kIoBound, kCpuBound };
std::string_view to_string(QueryClass c);

struct QueryPlan {
  std::string query_id;
  bool reads_raw = false;
  AttributeSet tokenized;
  AttributeSet parsed;
  AttributeSet read_loaded;
  QueryClass classification = QueryClass::kCovered;
};

enum class EvalMode { kSerial, kPipelined };
std::string_view to_string(EvalMode mode);
EvalMode eval_mode_from_string(std::string_view text);

struct TermBreakdown {
  double raw_read = 0;
  double tokenize = 0;
  double parse = 0;
  double loaded_read = 0;
};

struct QueryCost {
  std::string query_id;
  double weight = 0;
  double seconds = 0;
  TermBreakdown terms;
  QueryClass classification = QueryClass::kCovered;
};

struct CostReport {
  EvalMode mode = EvalMode::kSerial;
  double load_time = 0;
  std::vector<QueryCost> per_query;
  double objective = 0;
};

}  // namespace partload
