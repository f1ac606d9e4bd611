#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "partload/objective.h"

namespace partload {

struct BaselineResult {
  AttributeSet loaded;
  CostReport report;
  bool capped = false;          // chu: stopped by its time cap
  std::uint64_t evaluated = 0;  // objective evaluations
};

// Weighted co-occurrence: entry (a, b) sums the weights of queries that use
// both a and b; the diagonal holds per-attribute usage.
std::vector<std::vector<double>> affinity_matrix(const Workload& workload, std::size_t n);

// Bond-energy ordering of all attributes, seeded with the highest-affinity
// pair and grown by the (attribute, position) insertion of largest
// contribution 2 bond(l,x) + 2 bond(x,r) - 2 bond(l,r).
std::vector<int> navathe_order(const Workload& workload, std::size_t n);

// Cheapest budget-feasible prefix or suffix of the ordering (including the
// empty set). Ties keep the earliest candidate.
BaselineResult navathe(const Objective& objective, double budget);
BaselineResult navathe_split(const Objective& objective, double budget,
                             const std::vector<int>& order);

// Best union of whole queries that fits, enumerated by increasing number of
// queries; `time_cap_sec` bounds the search.
BaselineResult chu(const Objective& objective, double budget, double time_cap_sec = 60.0);

struct ColumnGroup {
  std::vector<int> attrs;
  double cg_cost = 0;
  double vp_confidence = 0;
};

// Groups contained in at least one query whose CG-Cost reaches `threshold`,
// ranked by VP-Confidence, then size (larger first), then attributes.
// Error(kInstanceTooLarge) when more than `group_cap` groups qualify.
std::vector<ColumnGroup> column_groups(const Workload& workload, std::size_t n, double threshold,
                                       std::size_t group_cap);

inline constexpr std::size_t kDefaultGroupCap = 200000;

// Consumes the ranked groups, adding the not-yet-loaded group member with the
// lowest objective one at a time while it fits. Returns the best set seen
// along that trajectory (the empty set included).
BaselineResult agrawal(const Objective& objective, double budget, double threshold,
                       std::size_t group_cap = kDefaultGroupCap);

}  // namespace partload
