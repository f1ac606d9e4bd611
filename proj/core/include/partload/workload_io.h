#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "partload/model.h"

namespace partload {

struct WorkloadDocument {
  CostParams params;
  Workload workload;
};

// Parses the JSON workload document:
//   { "params": { "row_count", "raw_size_bytes", "bandwidth_bytes_per_sec",
//                 "tokenization_mode", "attributes": [ {name, spf_bytes,
//                 t_tok_sec, t_parse_sec}, ... ] },
//     "queries": [ { "id", "attrs": [names], "weight" }, ... ] }
// "queries" may be omitted (empty workload). Throws Error(kInvalidInput).
WorkloadDocument parse_workload(std::string_view document);

// Parses only the "queries" array of `document`, resolving names against
// `params`. Any "params" member in the document is ignored.
Workload parse_queries(std::string_view document, const CostParams& params);

std::string serialize_workload(const CostParams& params, const Workload& workload);

WorkloadDocument read_workload_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

// Synthetic workload: per-query width ~ Normal(mean_width, stddev_width),
// rounded and clamped to [1, active_subset]; attributes drawn uniformly
// without replacement from a seeded random subset of `active_subset`
// attributes; equal weights 1/m. Deterministic for a fixed seed.
Workload gen_synthetic_workload(int n_attrs, int m_queries, double mean_width,
                                double stddev_width, int active_subset, std::uint64_t seed);

}  // namespace partload
