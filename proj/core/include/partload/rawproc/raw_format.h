#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "partload/model.h"

namespace partload::rawproc {

enum class FormatKind { kCsv, kJsonLines, kFixedBinary };

std::string_view to_string(FormatKind kind);
// Accepts csv, json, json-lines, binary, fixed-binary.
FormatKind format_kind_from_string(std::string_view text);

// csv is prefix-tokenized, json-lines fully tokenized, fixed-binary not at all.
TokenizationMode tokenization_mode_of(FormatKind kind);

enum class ValueType { kInt64, kFloat64 };
std::string_view to_string(ValueType type);
ValueType value_type_from_string(std::string_view text);

struct Column {
  std::string name;  // dotted path for json-lines ("g0.s1.a3")
  ValueType type = ValueType::kInt64;
};

struct RawSchema {
  std::vector<Column> columns;
  std::size_t size() const { return columns.size(); }
};

struct RawFormat {
  FormatKind kind = FormatKind::kCsv;
  char delimiter = ',';
  // fixed-binary: extra extraction seconds per attribute and query, folded
  // into the calibrated parse time (the model's startup cost coefficient).
  double startup_sec_per_attr = 0;
};

// Deterministic schema with a mix of integer and floating columns. Names are
// a0..a{n-1}; json-lines nests them three levels deep (g{k/8}.s{k/4%2}.a{k}).
RawSchema make_schema(FormatKind kind, std::size_t n, std::uint64_t seed);

// Per-column value range recorded in the generation manifest.
struct ColumnStats {
  double min = 0;
  double max = 0;
};

struct Manifest {
  FormatKind kind = FormatKind::kCsv;
  RawSchema schema;
  std::uint64_t rows = 0;
  std::uint64_t seed = 0;
  std::uint64_t bytes = 0;
  std::vector<ColumnStats> stats;
};

std::string manifest_path(const std::string& raw_path);
void write_manifest(const std::string& raw_path, const Manifest& manifest);
// Error(kIo) when missing or unreadable.
Manifest read_manifest(const std::string& raw_path);

// fixed-binary layout: "PLFB", u32 version, u32 ncols, u64 rows, then per
// column u8 type, u16 name length, name bytes; rows of 8-byte little-endian
// values follow.
inline constexpr char kBinaryMagic[4] = {'P', 'L', 'F', 'B'};
inline constexpr std::uint32_t kBinaryVersion = 1;

struct BinaryHeader {
  RawSchema schema;
  std::uint64_t rows = 0;
  std::size_t header_bytes = 0;
};

std::string encode_binary_header(const RawSchema& schema, std::uint64_t rows);
// Reads and checks the header of a fixed-binary file (Error kIo/kInvalidInput).
BinaryHeader read_binary_header(const std::string& path);

}  // namespace partload::rawproc
