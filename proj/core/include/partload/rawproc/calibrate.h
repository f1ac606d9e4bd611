#pragma once

#include <cstdint>
#include <string>

#include "partload/model.h"
#include "partload/rawproc/raw_format.h"

namespace partload::rawproc {

struct CalibrationOptions {
  std::size_t sample_rows = 5000;
  // Bytes of the file read cold to time bandwidth (small reads are dominated
  // by seek and readahead warm-up).
  std::uint64_t bandwidth_bytes = 64ull << 20;
  unsigned repetitions = 15;
  // 0 = size of the file.
  std::uint64_t raw_size = 0;
  // 0 = manifest row count when present, else extrapolated from the sample.
  std::uint64_t row_count = 0;
};

struct Calibration {
  CostParams params;
  RawSchema schema;
  double sample_record_bytes = 0;  // mean record length in the sample
};

// Measures tokenize and parse costs per attribute on the first sample_rows
// records, plus storage bandwidth. csv fits the prefix tokenize time
// T(e) ~ c + a (e+1) + b bytes(0..e); json splits the whole-record map build
// evenly over attributes; fixed-binary has zero tokenize cost and folds the
// format's startup coefficient into the parse cost.
// Errors: kInvalidInput (sample_rows < 1000 or too few records), kIo,
// kCalibration (clock too coarse).
Calibration calibrate(const RawFormat& format, const std::string& path,
                      const CalibrationOptions& options);

}  // namespace partload::rawproc
