#include "partload/rawproc/tokenizers.h"

#include <bit>
#include <charconv>
#include <cstring>

#include "partload/errors.h"

namespace partload::rawproc {

std::size_t split_lines(std::string_view data, std::vector<std::string_view>& out) {
  std::size_t pos = 0;
  for (;;) {
    const void* nl = std::memchr(data.data() + pos, '\n', data.size() - pos);
    if (nl == nullptr) break;
    const auto end = static_cast<std::size_t>(static_cast<const char*>(nl) - data.data());
    std::size_t len = end - pos;
    if (len > 0 && data[pos + len - 1] == '\r') --len;
    out.emplace_back(data.data() + pos, len);
    pos = end + 1;
  }
  return pos;
}

std::size_t split_fixed(std::string_view data, std::size_t record_bytes,
                        std::vector<std::string_view>& out) {
  const std::size_t count = data.size() / record_bytes;
  for (std::size_t r = 0; r < count; ++r) out.emplace_back(data.data() + r * record_bytes, record_bytes);
  return count * record_bytes;
}

void tokenize_csv(Batch& batch, char delimiter, int end) {
  const auto stride = static_cast<std::size_t>(end + 1);
  batch.stride = stride;
  batch.fields.resize(batch.records.size() * stride);
  std::string_view* f = batch.fields.data();
  for (std::string_view rec : batch.records) {
    const char* p = rec.data();
    const char* stop = p + rec.size();
    for (std::size_t j = 0; j < stride; ++j) {
      const void* d = std::memchr(p, delimiter, static_cast<std::size_t>(stop - p));
      const char* e = d ? static_cast<const char*>(d) : stop;
      f[j] = std::string_view(p, static_cast<std::size_t>(e - p));
      p = e < stop ? e + 1 : stop;
    }
    f += stride;
  }
}

JsonKeyIndex::JsonKeyIndex(const RawSchema& schema) : n_(schema.size()) {
  for (std::size_t k = 0; k < schema.size(); ++k) index_.emplace(schema.columns[k].name, static_cast<int>(k));
}

namespace {

[[noreturn]] void bad_json(std::string_view rec) {
  fail(ErrorKind::kInvalidInput,
       "malformed json record: " + std::string(rec.substr(0, std::min<std::size_t>(rec.size(), 60))));
}

class JsonWalker {
 public:
  JsonWalker(std::string_view rec, std::string& path) : rec_(rec), p_(0), path_(path) {}

  // Calls leaf(path, value_view) for every scalar member.
  template <typename Leaf>
  void object(Leaf&& leaf) {
    ws();
    expect('{');
    ws();
    if (peek() == '}') {
      ++p_;
      return;
    }
    for (;;) {
      ws();
      const std::string_view key = string_body();
      ws();
      expect(':');
      ws();
      const std::size_t mark = path_.size();
      if (!path_.empty()) path_ += '.';
      path_.append(key.data(), key.size());
      if (peek() == '{') {
        object(leaf);
      } else {
        leaf(std::string_view(path_), scalar());
      }
      path_.resize(mark);
      ws();
      const char c = next();
      if (c == '}') return;
      if (c != ',') bad_json(rec_);
    }
  }

 private:
  char peek() const { return p_ < rec_.size() ? rec_[p_] : '\0'; }
  char next() { return p_ < rec_.size() ? rec_[p_++] : (bad_json(rec_), '\0'); }
  void ws() {
    while (p_ < rec_.size() && (rec_[p_] == ' ' || rec_[p_] == '\t')) ++p_;
  }
  void expect(char c) {
    if (next() != c) bad_json(rec_);
  }
  std::string_view string_body() {
    expect('"');
    const std::size_t start = p_;
    while (p_ < rec_.size() && rec_[p_] != '"') p_ += rec_[p_] == '\\' ? 2 : 1;
    if (p_ >= rec_.size()) bad_json(rec_);
    return rec_.substr(start, p_++ - start);
  }
  std::string_view scalar() {
    if (peek() == '"') return string_body();
    if (peek() == '[') bad_json(rec_);
    const std::size_t start = p_;
    while (p_ < rec_.size() && rec_[p_] != ',' && rec_[p_] != '}' && rec_[p_] != ' ') ++p_;
    if (p_ == start) bad_json(rec_);
    return rec_.substr(start, p_ - start);
  }

  std::string_view rec_;
  std::size_t p_;
  std::string& path_;
};

}  // namespace

void tokenize_json(Batch& batch, const JsonKeyIndex& keys) {
  const std::size_t stride = keys.size();
  batch.stride = stride;
  batch.fields.assign(batch.records.size() * stride, std::string_view());
  std::string path;
  path.reserve(64);
  std::string_view* f = batch.fields.data();
  for (std::string_view rec : batch.records) {
    path.clear();
    JsonWalker walker(rec, path);
    walker.object([&](std::string_view key, std::string_view value) {
      const int k = keys.find(key);
      if (k >= 0) f[k] = value;
    });
    f += stride;
  }
}

std::vector<std::string> json_flat_keys(std::string_view record) {
  std::vector<std::string> keys;
  std::string path;
  JsonWalker walker(record, path);
  walker.object([&](std::string_view key, std::string_view) { keys.emplace_back(key); });
  return keys;
}

std::uint64_t parse_text_value(std::string_view text, ValueType type) {
  const char* b = text.data();
  const char* e = b + text.size();
  if (type == ValueType::kInt64) {
    std::int64_t v = 0;
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) {
      fail(ErrorKind::kInvalidInput, "bad integer field '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(v);
  }
  double v = 0;
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) {
    fail(ErrorKind::kInvalidInput, "bad float field '" + std::string(text) + "'");
  }
  return std::bit_cast<std::uint64_t>(v);
}

double word_to_double(std::uint64_t word, ValueType type) {
  return type == ValueType::kInt64 ? static_cast<double>(static_cast<std::int64_t>(word))
                                   : std::bit_cast<double>(word);
}

void parse_column(const Batch& batch, FormatKind kind, int j, ValueType type, std::uint64_t* out) {
  const std::size_t rows = batch.records.size();
  if (kind == FormatKind::kFixedBinary) {
    const std::size_t off = static_cast<std::size_t>(j) * 8;
    for (std::size_t r = 0; r < rows; ++r) {
      const auto* p = reinterpret_cast<const unsigned char*>(batch.records[r].data() + off);
      std::uint64_t v = 0;
      for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
      out[r] = v;
    }
    return;
  }
  const auto col = static_cast<std::size_t>(j);
  for (std::size_t r = 0; r < rows; ++r) out[r] = parse_text_value(batch.field(r, col), type);
}

}  // namespace partload::rawproc
