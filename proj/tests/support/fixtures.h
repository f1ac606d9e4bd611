#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "partload/model.h"
#include "partload/workload_io.h"

namespace partload::testing_support {

inline std::string fixture_path(const std::string& name) {
  return std::string(PARTLOAD_FIXTURE_DIR) + "/" + name;
}

inline WorkloadDocument load_fixture(const std::string& name) {
  return read_workload_file(fixture_path(name));
}

// Bytes of `k` columns of the Table 1 instance (uniform sizes).
inline double table1_budget(const CostParams& p, int k) { return k * p.column_bytes(0); }

inline AttributeSet names_to_set(const CostParams& p, std::initializer_list<const char*> names) {
  AttributeSet s(p.num_attributes());
  for (const char* n : names) s.insert(p.find(n));
  return s;
}

enum class Regime { kRawDominant, kCpuDominant, kBalanced, kWideColumns };

struct Instance {
  CostParams params;
  Workload workload;
};

// Random instance with distinct nonempty queries. Cost regimes shift the
// balance between raw access, extraction and loaded reads.
inline Instance random_instance(std::mt19937_64& rng, int n, int m, Regime regime,
                                TokenizationMode mode) {
  Instance inst;
  CostParams& p = inst.params;
  p.row_count = 1'000'000;
  p.bandwidth = 1e9;
  p.tokenization_mode = mode;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  switch (regime) {
    case Regime::kRawDominant: p.raw_size = pick(5e9, 2e10); break;
    case Regime::kCpuDominant: p.raw_size = pick(1e8, 5e8); break;
    case Regime::kBalanced: p.raw_size = pick(5e8, 3e9); break;
    case Regime::kWideColumns: p.raw_size = pick(1e9, 4e9); break;
  }
  for (int j = 0; j < n; ++j) {
    Attribute a;
    a.index = j;
    a.name = "c" + std::to_string(j);
    a.spf = regime == Regime::kWideColumns ? pick(8, 256) : (u(rng) < 0.5 ? 4 : 8);
    const double cpu_scale = regime == Regime::kCpuDominant ? 10.0 : 1.0;
    a.t_tok = mode == TokenizationMode::kNone ? 0.0 : pick(1e-9, 5e-8) * cpu_scale;
    a.t_parse = pick(1e-8, 5e-7) * cpu_scale;
    p.attributes.push_back(a);
  }
  std::set<std::vector<int>> seen;
  std::uniform_int_distribution<int> width(1, std::min(n, 5));
  while (static_cast<int>(inst.workload.queries.size()) < m) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> attrs(all.begin(), all.begin() + width(rng));
    std::sort(attrs.begin(), attrs.end());
    if (!seen.insert(attrs).second) continue;
    Query q;
    q.id = "q" + std::to_string(inst.workload.queries.size());
    q.attrs = std::move(attrs);
    q.weight = pick(0.5, 20.0);
    inst.workload.queries.push_back(std::move(q));
  }
  return inst;
}

inline Regime regime_of(std::uint64_t k) { return static_cast<Regime>(k % 4); }

inline double total_bytes(const CostParams& p) {
  double b = 0;
  for (std::size_t j = 0; j < p.num_attributes(); ++j) b += p.column_bytes(static_cast<int>(j));
  return b;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("partload_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace partload::testing_support
