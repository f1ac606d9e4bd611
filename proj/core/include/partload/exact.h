#pragma once

#include <cstddef>
#include <cstdint>

#include "partload/objective.h"

namespace partload {

inline constexpr std::size_t kMaxExactCandidates = 24;

struct ExactResult {
  AttributeSet loaded;
  CostReport report;
  std::uint64_t evaluated = 0;  // subsets that fit the budget
};

// Global optimum over all budget-feasible subsets of the referenced
// attributes. Ties go to the lexicographically smallest set. Work is split
// across `threads` workers (0 = hardware concurrency); the result does not
// depend on the thread count. Error(kInstanceTooLarge) above 24 candidates.
ExactResult brute_force(const Objective& objective, double budget, unsigned threads = 1);
ExactResult brute_force(const CostParams& params, const Workload& workload, double budget,
                        EvalMode mode, unsigned threads = 1);

}  // namespace partload
