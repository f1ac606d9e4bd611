#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partload/model.h"
#include "partload/rawproc/raw_format.h"

namespace partload::rawproc {

struct Measurement {
  std::string query_id;
  double wall = 0;
  double read = 0;
  double tokenize = 0;
  double parse = 0;
  double loaded_read = 0;
  double write = 0;
};

struct RunOptions {
  EvalMode mode = EvalMode::kSerial;
  // Directory receiving <name>.col files; created if missing.
  std::string dataset_dir;
  unsigned repetitions = 3;
  unsigned consumers = 0;  // pipelined extraction threads, 0 = hardware concurrency
  std::size_t chunk_bytes = 4u << 20;
  std::size_t queue_depth = 4;
  bool drop_caches = true;
};

struct RunResult {
  Measurement load;  // all zero when nothing is loaded
  std::vector<Measurement> queries;
  // False when some eviction could not be verified; measurements may then
  // include cached reads.
  bool caches_dropped = true;
  std::vector<std::string> warnings;
  // Sum of all 8-byte words each query touched (identical across modes).
  std::vector<std::uint64_t> checksums;
};

// Loads `loaded` (serially), then runs each query with the plan of
// derive_query_plan. Timings are averages over `repetitions` runs; caches
// are dropped before the load and before every query. Pipelined mode
// overlaps raw reading with extraction and needs atomic or none
// tokenization (Error kModeUnsupported).
RunResult run_workload(const RawFormat& format, const std::string& raw_path,
                       const RawSchema& schema, const CostParams& params,
                       const Workload& workload, const AttributeSet& loaded,
                       const RunOptions& options);

std::string column_path(const std::string& dataset_dir, const std::string& name);

// Reads a column file as 8-byte little-endian words (Error kIo).
std::vector<std::uint64_t> read_column(const std::string& path);

// "query_id,mode,wall_sec,read_sec,tok_sec,parse_sec,loadedread_sec,write_sec";
// the first row is the load.
std::string measurements_to_csv(const RunResult& result, EvalMode mode);

// "query_index,predicted_cumulative_sec,measured_cumulative_sec"; row 0 is
// the load, row i adds query i.
std::string comparison_csv(const std::vector<double>& predicted_cumulative,
                           const RunResult& result);
std::vector<double> measured_cumulative(const RunResult& result);

}  // namespace partload::rawproc
