#include "partload/rawproc/raw_format.h"

#include <cstring>
#include <fstream>
#include <random>

#include "json.hpp"
#include "partload/errors.h"
#include "partload/workload_io.h"

namespace partload::rawproc {

std::string_view to_string(FormatKind kind) {
  switch (kind) {
    case FormatKind::kCsv: return "csv";
    case FormatKind::kJsonLines: return "json";
    case FormatKind::kFixedBinary: return "binary";
  }
  return "csv";
}

FormatKind format_kind_from_string(std::string_view text) {
  if (text == "csv") return FormatKind::kCsv;
  if (text == "json" || text == "json-lines") return FormatKind::kJsonLines;
  if (text == "binary" || text == "fixed-binary") return FormatKind::kFixedBinary;
  fail(ErrorKind::kInvalidInput, "unknown raw format '" + std::string(text) + "'");
}

TokenizationMode tokenization_mode_of(FormatKind kind) {
  switch (kind) {
    case FormatKind::kCsv: return TokenizationMode::kPrefix;
    case FormatKind::kJsonLines: return TokenizationMode::kAtomic;
    case FormatKind::kFixedBinary: return TokenizationMode::kNone;
  }
  return TokenizationMode::kPrefix;
}

std::string_view to_string(ValueType type) {
  return type == ValueType::kInt64 ? "int64" : "float64";
}

ValueType value_type_from_string(std::string_view text) {
  if (text == "int64") return ValueType::kInt64;
  if (text == "float64") return ValueType::kFloat64;
  fail(ErrorKind::kInvalidInput, "unknown value type '" + std::string(text) + "'");
}

RawSchema make_schema(FormatKind kind, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5c4e3a);
  std::bernoulli_distribution is_float(0.4);
  RawSchema schema;
  for (std::size_t k = 0; k < n; ++k) {
    Column c;
    c.name = "a" + std::to_string(k);
    if (kind == FormatKind::kJsonLines) {
      c.name = "g" + std::to_string(k / 8) + ".s" + std::to_string((k / 4) % 2) + "." + c.name;
    }
    c.type = is_float(rng) ? ValueType::kFloat64 : ValueType::kInt64;
    schema.columns.push_back(std::move(c));
  }
  return schema;
}

std::string manifest_path(const std::string& raw_path) { return raw_path + ".manifest.json"; }

void write_manifest(const std::string& raw_path, const Manifest& manifest) {
  nlohmann::json cols = nlohmann::json::array();
  for (std::size_t k = 0; k < manifest.schema.size(); ++k) {
    const Column& c = manifest.schema.columns[k];
    nlohmann::json col = {{"name", c.name}, {"type", std::string(to_string(c.type))}};
    if (k < manifest.stats.size()) {
      col["min"] = manifest.stats[k].min;
      col["max"] = manifest.stats[k].max;
    }
    cols.push_back(std::move(col));
  }
  const nlohmann::json doc = {{"format", std::string(to_string(manifest.kind))},
                              {"rows", manifest.rows},
                              {"seed", manifest.seed},
                              {"bytes", manifest.bytes},
                              {"columns", std::move(cols)}};
  write_text_file(manifest_path(raw_path), doc.dump(2) + "\n");
}

Manifest read_manifest(const std::string& raw_path) {
  const std::string text = read_text_file(manifest_path(raw_path));
  Manifest m;
  try {
    const auto doc = nlohmann::json::parse(text);
    m.kind = format_kind_from_string(doc.at("format").get<std::string>());
    m.rows = doc.at("rows").get<std::uint64_t>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.bytes = doc.at("bytes").get<std::uint64_t>();
    for (const auto& col : doc.at("columns")) {
      m.schema.columns.push_back(
          {col.at("name").get<std::string>(),
           value_type_from_string(col.at("type").get<std::string>())});
      m.stats.push_back({col.value("min", 0.0), col.value("max", 0.0)});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kInvalidInput, "malformed manifest: " + std::string(e.what()));
  }
  return m;
}

namespace {

template <typename T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

std::string encode_binary_header(const RawSchema& schema, std::uint64_t rows) {
  std::string out(kBinaryMagic, 4);
  put_le<std::uint32_t>(out, kBinaryVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(schema.size()));
  put_le<std::uint64_t>(out, rows);
  for (const Column& c : schema.columns) {
    put_le<std::uint8_t>(out, c.type == ValueType::kInt64 ? 0 : 1);
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(c.name.size()));
    out += c.name;
  }
  return out;
}

BinaryHeader read_binary_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path);
  unsigned char fixed[20];
  if (!in.read(reinterpret_cast<char*>(fixed), sizeof(fixed))) {
    fail(ErrorKind::kInvalidInput, path + ": truncated binary header");
  }
  if (std::memcmp(fixed, kBinaryMagic, 4) != 0) {
    fail(ErrorKind::kInvalidInput, path + ": not a fixed-binary raw file");
  }
  if (get_le<std::uint32_t>(fixed + 4) != kBinaryVersion) {
    fail(ErrorKind::kInvalidInput, path + ": unsupported binary version");
  }
  BinaryHeader h;
  const auto ncols = get_le<std::uint32_t>(fixed + 8);
  h.rows = get_le<std::uint64_t>(fixed + 12);
  h.header_bytes = sizeof(fixed);
  for (std::uint32_t k = 0; k < ncols; ++k) {
    unsigned char meta[3];
    if (!in.read(reinterpret_cast<char*>(meta), 3)) {
      fail(ErrorKind::kInvalidInput, path + ": truncated binary header");
    }
    const auto len = get_le<std::uint16_t>(meta + 1);
    std::string name(len, '\0');
    if (!in.read(name.data(), len)) fail(ErrorKind::kInvalidInput, path + ": truncated binary header");
    h.schema.columns.push_back({std::move(name), meta[0] == 0 ? ValueType::kInt64 : ValueType::kFloat64});
    h.header_bytes += 3 + len;
  }
  return h;
}

}  // namespace partload::rawproc
