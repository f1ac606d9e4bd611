#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "partload/errors.h"
#include "partload/workload_io.h"

namespace partload {

Workload gen_synthetic_workload(int n_attrs, int m_queries, double mean_width,
                                double stddev_width, int active_subset, std::uint64_t seed) {
  if (n_attrs < 1 || active_subset < 1 || active_subset > n_attrs) {
    fail(ErrorKind::kInvalidInput, "active_subset must lie in [1, n_attrs]");
  }
  if (!(mean_width > 0) || stddev_width < 0 || m_queries < 0) {
    fail(ErrorKind::kInvalidInput, "mean_width must be positive, stddev and m nonnegative");
  }

  std::mt19937_64 rng(seed);
  std::vector<int> active(static_cast<std::size_t>(n_attrs));
  std::iota(active.begin(), active.end(), 0);
  std::shuffle(active.begin(), active.end(), rng);
  active.resize(static_cast<std::size_t>(active_subset));

  std::normal_distribution<double> width_dist(mean_width, stddev_width);
  std::set<std::vector<int>> seen;
  Workload workload;
  const long max_attempts = 1000L * std::max(1, m_queries);
  long attempts = 0;
  while (static_cast<int>(workload.queries.size()) < m_queries) {
    if (++attempts > max_attempts) {
      fail(ErrorKind::kInvalidInput,
           "could not draw " + std::to_string(m_queries) +
               " distinct queries; widen the active subset or the width distribution");
    }
    const double drawn = stddev_width > 0 ? width_dist(rng) : mean_width;
    const int width = static_cast<int>(
        std::clamp<long>(std::lround(drawn), 1, static_cast<long>(active_subset)));

    // Partial Fisher-Yates over the active subset.
    std::vector<int> pool = active;
    for (int k = 0; k < width; ++k) {
      std::uniform_int_distribution<int> pick(k, active_subset - 1);
      std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<int> attrs(pool.begin(), pool.begin() + width);
    std::sort(attrs.begin(), attrs.end());
    if (!seen.insert(attrs).second) continue;

    Query q;
    q.id = "q" + std::to_string(workload.queries.size());
    q.attrs = std::move(attrs);
    workload.queries.push_back(std::move(q));
  }
  for (Query& q : workload.queries) q.weight = 1.0 / static_cast<double>(m_queries);
  return workload;
}

}  // namespace partload
