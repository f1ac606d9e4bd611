#pragma once

#include <cstdint>
#include <string>

#include "partload/rawproc/raw_format.h"

namespace partload::rawproc {

// Writes `rows` deterministic records plus the sidecar manifest
// (<path>.manifest.json). csv files start with a header row. Error(kIo).
Manifest gen_raw(const RawFormat& format, const RawSchema& schema, std::uint64_t rows,
                 std::uint64_t seed, const std::string& path);

// Row count whose file is approximately `target_bytes` long.
std::uint64_t rows_for_bytes(const RawFormat& format, const RawSchema& schema,
                             std::uint64_t target_bytes, std::uint64_t seed);

}  // namespace partload::rawproc
