#include <benchmark/benchmark.h>

#include <filesystem>
#include <map>

#include "partload/rawproc/generate.h"
#include "partload/rawproc/reader.h"
#include "partload/rawproc/tokenizers.h"

namespace partload::rawproc {
namespace {

constexpr std::size_t kAttrs = 24;
constexpr std::uint64_t kRows = 20000;

// Records of a generated file, kept alive for the benchmark's lifetime.
struct Sample {
  RawFormat format;
  RawSchema schema;
  std::vector<std::string> records;
  Batch batch;
};

const Sample& sample(FormatKind kind) {
  static std::map<FormatKind, Sample> cache;
  auto it = cache.find(kind);
  if (it != cache.end()) return it->second;
  Sample& s = cache[kind];
  s.format.kind = kind;
  s.schema = make_schema(kind, kAttrs, 1);
  const auto path = (std::filesystem::temp_directory_path() /
                     ("partload_bench_" + std::string(to_string(kind))))
                        .string();
  gen_raw(s.format, s.schema, kRows, 3, path);
  s.records = read_leading_records(s.format, path, s.schema, kRows);
  std::filesystem::remove(path);
  std::filesystem::remove(manifest_path(path));
  for (const std::string& r : s.records) s.batch.records.emplace_back(r);
  return s;
}

void BM_TokenizeCsvPrefix(benchmark::State& state) {
  const Sample& s = sample(FormatKind::kCsv);
  Batch b;
  b.records = s.batch.records;
  const auto end = static_cast<int>(state.range(0));
  for (auto _ : state) {
    tokenize_csv(b, s.format.delimiter, end);
    benchmark::DoNotOptimize(b.fields.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kRows));
}
BENCHMARK(BM_TokenizeCsvPrefix)->Arg(0)->Arg(5)->Arg(11)->Arg(23);

void BM_TokenizeJson(benchmark::State& state) {
  const Sample& s = sample(FormatKind::kJsonLines);
  const JsonKeyIndex keys(s.schema);
  Batch b;
  b.records = s.batch.records;
  for (auto _ : state) {
    tokenize_json(b, keys);
    benchmark::DoNotOptimize(b.fields.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kRows));
}
BENCHMARK(BM_TokenizeJson);

void BM_ParseCsvColumn(benchmark::State& state) {
  const Sample& s = sample(FormatKind::kCsv);
  Batch b;
  b.records = s.batch.records;
  tokenize_csv(b, s.format.delimiter, static_cast<int>(kAttrs) - 1);
  const auto j = static_cast<int>(state.range(0));
  const ValueType type = s.schema.columns[static_cast<std::size_t>(j)].type;
  std::vector<std::uint64_t> out(b.records.size());
  for (auto _ : state) {
    parse_column(b, FormatKind::kCsv, j, type, out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kRows));
  state.SetLabel(std::string(to_string(type)));
}
BENCHMARK(BM_ParseCsvColumn)->DenseRange(0, 3);

}  // namespace
}  // namespace partload::rawproc
