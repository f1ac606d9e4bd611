#include "partload/rawproc/reader.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "partload/errors.h"
#include "partload/rawproc/tokenizers.h"

namespace partload::rawproc {

std::uint64_t file_size(const std::string& path) {
  struct stat st {};
  if (::stat(path.c_str(), &st) != 0) fail(ErrorKind::kIo, "cannot stat " + path);
  return static_cast<std::uint64_t>(st.st_size);
}

RawReader::RawReader(const RawFormat& format, const std::string& path, std::size_t record_bytes,
                     std::size_t chunk_bytes)
    : format_(format), path_(path), record_bytes_(record_bytes), chunk_bytes_(chunk_bytes) {
  std::size_t offset = 0;
  if (format.kind == FormatKind::kFixedBinary) {
    offset = read_binary_header(path).header_bytes;
    if (record_bytes_ == 0) fail(ErrorKind::kInvalidInput, "fixed-binary record size is zero");
  }
  fd_ = ::open(path.c_str(), O_RDONLY);
  if (fd_ < 0) fail(ErrorKind::kIo, "cannot open " + path + ": " + std::strerror(errno));
  if (offset > 0 && ::lseek(fd_, static_cast<off_t>(offset), SEEK_SET) < 0) {
    fail(ErrorKind::kIo, "seek failed: " + path);
  }
  skip_header_line_ = format.kind == FormatKind::kCsv;
}

RawReader::~RawReader() {
  if (fd_ >= 0) ::close(fd_);
}

bool RawReader::next(std::vector<char>& buffer, std::vector<std::string_view>& records) {
  records.clear();
  while (records.empty()) {
    if (eof_ && carry_.empty()) return false;
    buffer.resize(carry_.size() + chunk_bytes_);
    std::memcpy(buffer.data(), carry_.data(), carry_.size());
    std::size_t have = carry_.size();
    while (!eof_ && have < buffer.size()) {
      const ssize_t n = ::read(fd_, buffer.data() + have, buffer.size() - have);
      if (n < 0) {
        if (errno == EINTR) continue;
        fail(ErrorKind::kIo, "read failed: " + path_);
      }
      if (n == 0) eof_ = true;
      have += static_cast<std::size_t>(n);
      bytes_read_ += static_cast<std::uint64_t>(n);
    }
    buffer.resize(have);
    const std::string_view data(buffer.data(), have);
    std::size_t used;
    if (format_.kind == FormatKind::kFixedBinary) {
      used = split_fixed(data, record_bytes_, records);
      if (eof_ && used != have) fail(ErrorKind::kInvalidInput, path_ + ": truncated record");
    } else {
      used = split_lines(data, records);
      if (eof_ && used < have) {
        records.emplace_back(data.substr(used));
        used = have;
      }
    }
    carry_.assign(buffer.begin() + static_cast<std::ptrdiff_t>(used), buffer.begin() + static_cast<std::ptrdiff_t>(have));
    if (skip_header_line_ && !records.empty()) {
      records.erase(records.begin());
      skip_header_line_ = false;
    }
  }
  return true;
}

namespace {

ValueType infer_type(std::string_view text) {
  return text.find_first_of(".eE") == std::string_view::npos ? ValueType::kInt64
                                                             : ValueType::kFloat64;
}

std::vector<std::string_view> first_lines(std::string_view data, std::size_t count) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (lines.size() < count && pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    lines.push_back(data.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::string read_prefix(const std::string& path, std::size_t bytes) {
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) fail(ErrorKind::kIo, "cannot open " + path);
  std::string out(bytes, '\0');
  std::size_t have = 0;
  while (have < bytes) {
    const ssize_t n = ::read(fd, out.data() + have, bytes - have);
    if (n <= 0) break;
    have += static_cast<std::size_t>(n);
  }
  ::close(fd);
  out.resize(have);
  return out;
}

}  // namespace

RawSchema detect_schema(const RawFormat& format, const std::string& path) {
  if (format.kind == FormatKind::kFixedBinary) return read_binary_header(path).schema;
  const std::string head = read_prefix(path, 1 << 20);
  RawSchema schema;
  if (format.kind == FormatKind::kCsv) {
    const auto lines = first_lines(head, 2);
    if (lines.size() < 2) fail(ErrorKind::kInvalidInput, path + ": need a header and one record");
    std::vector<std::string_view> names, values;
    auto split = [&](std::string_view line, std::vector<std::string_view>& out) {
      std::size_t s = 0;
      for (;;) {
        const std::size_t d = line.find(format.delimiter, s);
        out.push_back(line.substr(s, d == std::string_view::npos ? line.npos : d - s));
        if (d == std::string_view::npos) break;
        s = d + 1;
      }
    };
    split(lines[0], names);
    split(lines[1], values);
    if (names.size() != values.size()) {
      fail(ErrorKind::kInvalidInput, path + ": header and first record differ in width");
    }
    for (std::size_t k = 0; k < names.size(); ++k) {
      schema.columns.push_back({std::string(names[k]), infer_type(values[k])});
    }
    return schema;
  }
  const auto lines = first_lines(head, 1);
  if (lines.empty()) fail(ErrorKind::kInvalidInput, path + ": empty json-lines file");
  const auto keys = json_flat_keys(lines[0]);
  Batch probe;
  probe.records.push_back(lines[0]);
  for (const std::string& k : keys) schema.columns.push_back({k, ValueType::kInt64});
  tokenize_json(probe, JsonKeyIndex(schema));
  for (std::size_t k = 0; k < schema.size(); ++k) schema.columns[k].type = infer_type(probe.field(0, k));
  return schema;
}

std::vector<std::string> read_leading_records(const RawFormat& format, const std::string& path,
                                              const RawSchema& schema, std::size_t rows) {
  RawReader reader(format, path, schema.size() * 8, 1 << 20);
  std::vector<char> buffer;
  std::vector<std::string_view> records;
  std::vector<std::string> out;
  while (out.size() < rows && reader.next(buffer, records)) {
    for (std::string_view r : records) {
      if (out.size() == rows) break;
      out.emplace_back(r);
    }
  }
  return out;
}

}  // namespace partload::rawproc
