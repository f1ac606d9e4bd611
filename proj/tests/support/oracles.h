#pragma once

// Independent reference implementations used as test oracles. They follow the
// formulas term by term and enumerate instead of reasoning, so they share no
// code paths with the library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "partload/model.h"

namespace partload::oracle {

inline double raw_term(const CostParams& p) { return p.raw_size / p.bandwidth; }

inline double tok_term(const CostParams& p, int j) {
  return static_cast<double>(p.row_count) * p.attributes[static_cast<std::size_t>(j)].t_tok;
}
inline double parse_term(const CostParams& p, int j) {
  return static_cast<double>(p.row_count) * p.attributes[static_cast<std::size_t>(j)].t_parse;
}
inline double io_term(const CostParams& p, int j) {
  return static_cast<double>(p.row_count) * p.attributes[static_cast<std::size_t>(j)].spf /
         p.bandwidth;
}

// Per-query variable assignment of the MIP (raw_i, t_ij, p_ij, read_ij).
struct Assignment {
  bool raw = false;
  std::vector<bool> t, p, read;
};

// Eq. (3) evaluated literally.
inline double serial_time(const CostParams& params, const Assignment& a) {
  double sum = 0;
  for (std::size_t j = 0; j < params.num_attributes(); ++j) {
    const int jj = static_cast<int>(j);
    if (a.t[j]) sum += tok_term(params, jj);
    if (a.p[j]) sum += parse_term(params, jj);
    if (a.read[j]) sum += io_term(params, jj);
  }
  return (a.raw ? raw_term(params) : 0.0) + sum;
}

// Eq. (4) with an explicit max.
inline double pipelined_time(const CostParams& params, const Assignment& a) {
  double cpu = 0, io = 0;
  for (std::size_t j = 0; j < params.num_attributes(); ++j) {
    const int jj = static_cast<int>(j);
    if (a.t[j]) cpu += tok_term(params, jj);
    if (a.p[j]) cpu += parse_term(params, jj);
    if (a.read[j]) io += io_term(params, jj);
  }
  return io + std::max(a.raw ? raw_term(params) : 0.0, cpu);
}

// Eq. (2): empty load set costs nothing; otherwise one raw pass, the
// tokenize prefix (or every attribute when positions are not addressable),
// parsing and writing of every saved column.
inline double load_time(const CostParams& params, const std::vector<bool>& save) {
  const std::size_t n = params.num_attributes();
  int last = -1;
  for (std::size_t j = 0; j < n; ++j) {
    if (save[j]) last = static_cast<int>(j);
  }
  if (last < 0) return 0;
  double sum = raw_term(params);
  const int tok_end =
      params.tokenization_mode == TokenizationMode::kPrefix ? last : static_cast<int>(n) - 1;
  for (int j = 0; j <= tok_end; ++j) sum += tok_term(params, j);
  for (std::size_t j = 0; j < n; ++j) {
    if (save[j]) sum += parse_term(params, static_cast<int>(j)) + io_term(params, static_cast<int>(j));
  }
  return sum;
}

// Checks C2, C4, C5 and C6 for one query.
inline bool feasible(const CostParams& params, const std::vector<bool>& save,
                     const std::vector<int>& attrs, const Assignment& a) {
  const std::size_t n = params.num_attributes();
  for (std::size_t j = 0; j < n; ++j) {
    if (a.read[j] && !save[j]) return false;               // C2
    if (a.p[j] && !a.t[j]) return false;                   // C4
    if (a.t[j] && !a.raw) return false;                    // C4
    for (std::size_t k = 0; k < j; ++k) {                  // C5
      if (params.tokenization_mode == TokenizationMode::kPrefix) {
        if (a.t[j] && !a.t[k]) return false;
      } else if (a.t[j] != a.t[k]) {
        return false;
      }
    }
  }
  for (int j : attrs) {
    const auto jj = static_cast<std::size_t>(j);
    if (static_cast<int>(a.read[jj]) + static_cast<int>(a.p[jj]) != 1) return false;  // C6
  }
  return true;
}

// Enumerates every assignment of raw_i, the tokenize vector and the
// parse/read choice of each accessed attribute, keeping those that satisfy
// C2-C6. Parsing or reading attributes the query does not access only adds
// cost, so those variables stay zero.
template <typename F>
void for_each_feasible_plan(const CostParams& params, const std::vector<bool>& save,
                            const std::vector<int>& attrs, F&& visit) {
  const std::size_t n = params.num_attributes();
  const std::size_t k = attrs.size();
  for (int raw = 0; raw <= 1; ++raw) {
    for (std::uint32_t tmask = 0; tmask < (1u << n); ++tmask) {
      // Cheap C5 pre-filter; feasible() still checks every constraint.
      const bool prefix_shape = (tmask & (tmask + 1)) == 0;
      const bool all_or_none = tmask == 0 || tmask == (1u << n) - 1;
      if (params.tokenization_mode == TokenizationMode::kPrefix ? !prefix_shape : !all_or_none) {
        continue;
      }
      if (raw == 0 && tmask != 0) continue;
      for (std::uint32_t choice = 0; choice < (1u << k); ++choice) {
        Assignment a;
        a.raw = raw != 0;
        a.t.assign(n, false);
        a.p.assign(n, false);
        a.read.assign(n, false);
        for (std::size_t j = 0; j < n; ++j) a.t[j] = (tmask >> j) & 1u;
        for (std::size_t x = 0; x < k; ++x) {
          const auto j = static_cast<std::size_t>(attrs[x]);
          if ((choice >> x) & 1u) {
            a.p[j] = true;
          } else {
            a.read[j] = true;
          }
        }
        if (feasible(params, save, attrs, a)) visit(a);
      }
    }
  }
}

inline double min_serial_time(const CostParams& params, const std::vector<bool>& save,
                              const std::vector<int>& attrs) {
  double best = std::numeric_limits<double>::infinity();
  for_each_feasible_plan(params, save, attrs,
                         [&](const Assignment& a) { best = std::min(best, serial_time(params, a)); });
  return best;
}

// Cheapest plan under the serial cost, then charged with the pipelined cost
// (the library derives pipelined plans the same way).
inline double serial_optimal_pipelined_time(const CostParams& params, const std::vector<bool>& save,
                                            const std::vector<int>& attrs) {
  double best = std::numeric_limits<double>::infinity();
  double charged = 0;
  for_each_feasible_plan(params, save, attrs, [&](const Assignment& a) {
    const double s = serial_time(params, a);
    if (s < best) {
      best = s;
      charged = pipelined_time(params, a);
    }
  });
  return charged;
}

inline std::vector<bool> mask_to_save(std::size_t n, std::uint64_t mask) {
  std::vector<bool> save(n);
  for (std::size_t j = 0; j < n; ++j) save[j] = (mask >> j) & 1u;
  return save;
}

inline double bytes_of_mask(const CostParams& params, std::uint64_t mask) {
  double b = 0;
  for (std::size_t j = 0; j < params.num_attributes(); ++j) {
    if ((mask >> j) & 1u) b += params.column_bytes(static_cast<int>(j));
  }
  return b;
}

// Serial objective by enumeration of every per-query plan. Exponential; for
// n <= 10 and a handful of queries.
inline double serial_objective(const CostParams& params, const Workload& w,
                               const std::vector<bool>& save) {
  double total = load_time(params, save);
  for (const Query& q : w.queries) total += q.weight * min_serial_time(params, save, q.attrs);
  return total;
}

struct SubsetOptimum {
  std::uint64_t mask = 0;
  double value = 0;
};

// Scans all 2^n load sets that fit the budget with a caller-supplied objective.
template <typename Eval>
SubsetOptimum best_subset(const CostParams& params, double budget, Eval&& eval,
                          const std::vector<std::uint64_t>* restrict_to = nullptr) {
  const std::size_t n = params.num_attributes();
  SubsetOptimum best{0, std::numeric_limits<double>::infinity()};
  auto consider = [&](std::uint64_t mask) {
    if (bytes_of_mask(params, mask) > budget * (1 + 1e-12)) return;
    const double v = eval(mask);
    if (v < best.value) best = {mask, v};
  };
  if (restrict_to != nullptr) {
    for (std::uint64_t mask : *restrict_to) consider(mask);
  } else {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) consider(mask);
  }
  return best;
}

// Every union of a nonempty subset of queries (plus the empty set).
inline std::vector<std::uint64_t> query_unions(const Workload& w) {
  const std::size_t m = w.queries.size();
  std::vector<std::uint64_t> out{0};
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((s >> i) & 1u) {
        for (int a : w.queries[i].attrs) mask |= std::uint64_t{1} << a;
      }
    }
    out.push_back(mask);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool near(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace partload::oracle
