#include "partload/rawproc/generate.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>

#include "partload/errors.h"

namespace partload::rawproc {

namespace {

// Per-column value source. Integer columns get varied digit counts so that
// field widths (and tokenize costs) differ across positions.
class ValueSource {
 public:
  ValueSource(const RawSchema& schema, std::uint64_t seed) : rng_(seed) {
    std::mt19937_64 shape(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> digits(1, 9);
    for (const Column& c : schema.columns) {
      types_.push_back(c.type);
      const int d = digits(shape);
      limit_.push_back(std::pow(10.0, d));
    }
    stats_.resize(schema.size(), {0, 0});
  }

  // Draws one row as 8-byte words.
  void row(std::vector<std::uint64_t>& words) {
    words.resize(types_.size());
    for (std::size_t k = 0; k < types_.size(); ++k) {
      double v;
      if (types_[k] == ValueType::kInt64) {
        std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(limit_[k]) - 1);
        const std::int64_t x = d(rng_);
        words[k] = static_cast<std::uint64_t>(x);
        v = static_cast<double>(x);
      } else {
        std::uniform_int_distribution<std::int64_t> d(-99999999, 99999999);
        // Four decimals, exactly representable as text.
        const double x = static_cast<double>(d(rng_)) / 1e4;
        words[k] = std::bit_cast<std::uint64_t>(x);
        v = x;
      }
      if (count_ == 0) stats_[k] = {v, v};
      stats_[k].min = std::min(stats_[k].min, v);
      stats_[k].max = std::max(stats_[k].max, v);
    }
    ++count_;
  }

  const std::vector<ColumnStats>& stats() const { return stats_; }

 private:
  std::mt19937_64 rng_;
  std::vector<ValueType> types_;
  std::vector<double> limit_;
  std::vector<ColumnStats> stats_;
  std::uint64_t count_ = 0;
};

void append_value(std::string& out, std::uint64_t word, ValueType type) {
  char buf[40];
  std::to_chars_result r;
  if (type == ValueType::kInt64) {
    r = std::to_chars(buf, buf + sizeof(buf), static_cast<std::int64_t>(word));
  } else {
    r = std::to_chars(buf, buf + sizeof(buf), std::bit_cast<double>(word), std::chars_format::fixed, 4);
  }
  out.append(buf, r.ptr);
}

void append_le(std::string& out, std::uint64_t word) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((word >> (8 * b)) & 0xff));
}

// Renders rows [from, from + count) into `out`.
class Renderer {
 public:
  Renderer(const RawFormat& format, const RawSchema& schema) : format_(format), schema_(schema) {
    if (format.kind == FormatKind::kJsonLines) build_json_layout();
  }

  std::string header(std::uint64_t rows) const {
    if (format_.kind == FormatKind::kCsv) {
      std::string h;
      for (std::size_t k = 0; k < schema_.size(); ++k) {
        if (k) h += format_.delimiter;
        h += schema_.columns[k].name;
      }
      return h + "\n";
    }
    if (format_.kind == FormatKind::kFixedBinary) return encode_binary_header(schema_, rows);
    return {};
  }

  void row(std::string& out, const std::vector<std::uint64_t>& words) const {
    switch (format_.kind) {
      case FormatKind::kCsv:
        for (std::size_t k = 0; k < words.size(); ++k) {
          if (k) out += format_.delimiter;
          append_value(out, words[k], schema_.columns[k].type);
        }
        out += '\n';
        break;
      case FormatKind::kJsonLines:
        for (const JsonStep& s : json_steps_) {
          out += s.text;
          if (s.column >= 0) {
            append_value(out, words[static_cast<std::size_t>(s.column)],
                         schema_.columns[static_cast<std::size_t>(s.column)].type);
          }
        }
        out += '\n';
        break;
      case FormatKind::kFixedBinary:
        for (std::uint64_t w : words) append_le(out, w);
        break;
    }
  }

 private:
  // A json row is a fixed sequence of literal text pieces, each optionally
  // followed by one column value.
  struct JsonStep {
    std::string text;
    int column = -1;
  };

  void build_json_layout() {
    std::vector<std::string> open;  // currently open object path
    std::string pending = "{";
    bool first_in_object = true;
    for (std::size_t k = 0; k < schema_.size(); ++k) {
      std::vector<std::string> parts;
      std::string_view name = schema_.columns[k].name;
      for (std::size_t s = 0;;) {
        const std::size_t dot = name.find('.', s);
        parts.emplace_back(name.substr(s, dot == std::string_view::npos ? name.npos : dot - s));
        if (dot == std::string_view::npos) break;
        s = dot + 1;
      }
      const std::vector<std::string> dirs(parts.begin(), parts.end() - 1);
      std::size_t common = 0;
      while (common < open.size() && common < dirs.size() && open[common] == dirs[common]) ++common;
      while (open.size() > common) {
        pending += "}";
        open.pop_back();
        first_in_object = false;
      }
      while (open.size() < dirs.size()) {
        if (!first_in_object) pending += ",";
        pending += "\"" + dirs[open.size()] + "\":{";
        open.push_back(dirs[open.size()]);
        first_in_object = true;
      }
      if (!first_in_object) pending += ",";
      pending += "\"" + parts.back() + "\":";
      json_steps_.push_back({pending, static_cast<int>(k)});
      pending.clear();
      first_in_object = false;
    }
    while (!open.empty()) {
      pending += "}";
      open.pop_back();
    }
    pending += "}";
    json_steps_.push_back({pending, -1});
  }

  RawFormat format_;
  const RawSchema& schema_;
  std::vector<JsonStep> json_steps_;
};

}  // namespace

Manifest gen_raw(const RawFormat& format, const RawSchema& schema, std::uint64_t rows,
                 std::uint64_t seed, const std::string& path) {
  if (schema.size() == 0) fail(ErrorKind::kInvalidInput, "schema has no columns");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) fail(ErrorKind::kIo, "cannot create " + path);

  const Renderer renderer(format, schema);
  ValueSource values(schema, seed);
  std::string buf = renderer.header(rows);
  std::uint64_t bytes = 0;
  std::vector<std::uint64_t> words;
  auto flush = [&] {
    if (!buf.empty() && std::fwrite(buf.data(), 1, buf.size(), f) != buf.size()) {
      std::fclose(f);
      fail(ErrorKind::kIo, "write failed: " + path);
    }
    bytes += buf.size();
    buf.clear();
  };
  for (std::uint64_t r = 0; r < rows; ++r) {
    values.row(words);
    renderer.row(buf, words);
    if (buf.size() >= (1u << 20)) flush();
  }
  flush();
  if (std::fclose(f) != 0) fail(ErrorKind::kIo, "close failed: " + path);

  Manifest m;
  m.kind = format.kind;
  m.schema = schema;
  m.rows = rows;
  m.seed = seed;
  m.bytes = bytes;
  m.stats = values.stats();
  write_manifest(path, m);
  return m;
}

std::uint64_t rows_for_bytes(const RawFormat& format, const RawSchema& schema,
                             std::uint64_t target_bytes, std::uint64_t seed) {
  const Renderer renderer(format, schema);
  ValueSource values(schema, seed);
  constexpr std::uint64_t kProbe = 2000;
  std::string buf;
  std::vector<std::uint64_t> words;
  for (std::uint64_t r = 0; r < kProbe; ++r) {
    values.row(words);
    renderer.row(buf, words);
  }
  const double per_row = static_cast<double>(buf.size()) / kProbe;
  const double header = static_cast<double>(renderer.header(0).size());
  const double rows = (static_cast<double>(target_bytes) - header) / per_row;
  return rows < 1 ? 1 : static_cast<std::uint64_t>(std::llround(rows));
}

}  // namespace partload::rawproc
