#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "partload/rawproc/raw_format.h"

namespace partload::rawproc {

// A run of records plus the field views found by tokenization, `stride`
// views per record. Views point into a buffer owned elsewhere.
struct Batch {
  std::vector<std::string_view> records;
  std::vector<std::string_view> fields;
  std::size_t stride = 0;

  std::string_view field(std::size_t record, std::size_t j) const {
    return fields[record * stride + j];
  }
};

// Splits `data` into newline-terminated records appended to `out`; returns
// the number of bytes consumed (a trailing partial line is left over).
std::size_t split_lines(std::string_view data, std::vector<std::string_view>& out);
// Fixed-size records; returns bytes consumed.
std::size_t split_fixed(std::string_view data, std::size_t record_bytes,
                        std::vector<std::string_view>& out);

// Locates fields 0..end of every record (stride end+1).
void tokenize_csv(Batch& batch, char delimiter, int end);

// Maps flattened dotted keys to attribute positions.
class JsonKeyIndex {
 public:
  explicit JsonKeyIndex(const RawSchema& schema);
  std::size_t size() const { return n_; }
  int find(std::string_view key) const {
    const auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, int, Hash, std::equal_to<>> index_;
  std::size_t n_ = 0;
};

// Walks each object, flattening nested keys with '.', and records the value
// view of every known key (stride = schema size). Error(kInvalidInput) on
// malformed records.
void tokenize_json(Batch& batch, const JsonKeyIndex& keys);

// Flattened dotted key names of one record, in document order.
std::vector<std::string> json_flat_keys(std::string_view record);

// Parses attribute j of every record into 8-byte words (int64 or IEEE
// double bits). Text formats read the tokenized field; fixed-binary decodes
// the little-endian value at offset 8*j.
void parse_column(const Batch& batch, FormatKind kind, int j, ValueType type, std::uint64_t* out);

std::uint64_t parse_text_value(std::string_view text, ValueType type);
double word_to_double(std::uint64_t word, ValueType type);

}  // namespace partload::rawproc
