#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "partload/rawproc/raw_format.h"

namespace partload::rawproc {

// Sequential chunked reader over a raw file that hands out complete records.
// The csv header row and the fixed-binary header are skipped.
class RawReader {
 public:
  RawReader(const RawFormat& format, const std::string& path, std::size_t record_bytes,
            std::size_t chunk_bytes);
  ~RawReader();
  RawReader(const RawReader&) = delete;
  RawReader& operator=(const RawReader&) = delete;

  // Fills `buffer` with the next chunk (plus the partial record carried over
  // from the previous one) and `records` with views into it. Returns false
  // once the file is exhausted.
  bool next(std::vector<char>& buffer, std::vector<std::string_view>& records);

  std::uint64_t bytes_read() const { return bytes_read_; }

 private:
  RawFormat format_;
  std::string path_;
  int fd_ = -1;
  std::size_t record_bytes_ = 0;
  std::size_t chunk_bytes_ = 0;
  std::vector<char> carry_;
  bool eof_ = false;
  bool skip_header_line_ = false;
  std::uint64_t bytes_read_ = 0;
};

// Column names from the csv header, the first json record (flattened) or the
// binary header; text value types are inferred from the first data record
// (a '.', 'e' or 'E' marks a float).
RawSchema detect_schema(const RawFormat& format, const std::string& path);

// Reads up to `rows` leading records into memory (header skipped).
std::vector<std::string> read_leading_records(const RawFormat& format, const std::string& path,
                                              const RawSchema& schema, std::size_t rows);

std::uint64_t file_size(const std::string& path);

}  // namespace partload::rawproc
