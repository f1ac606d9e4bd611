#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "partload/model.h"

namespace partload {

// Structured form of the linear MIP. All variables are binary.
//
// Variable names (0-based; query 0 is the load, queries 1..m the workload):
//   save_j                 attribute j is loaded
//   raw_i, t_i_j, p_i_j    raw read / tokenize / parse, i = 0..m
//   read_i_j               read loaded column, i = 1..m
// Pipelined models add, for i = 1..m:
//   cpu_i, io_i            query class
//   cpuraw_i, ioraw_i, cput_i_j, iot_i_j, cpup_i_j, iop_i_j
struct LpTerm {
  double coef = 0;
  int var = 0;
};

enum class LpSense { kLessEq, kGreaterEq, kEqual };

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  LpSense sense = LpSense::kLessEq;
  double rhs = 0;
};

struct LpModel {
  std::vector<std::string> variables;
  std::vector<LpTerm> objective;
  std::vector<LpConstraint> constraints;
};

// Pipelined mode needs atomic or none tokenization (Error kModeUnsupported).
LpModel build_mip(const CostParams& params, const Workload& workload, double budget,
                  EvalMode mode);

// CPLEX LP text (Minimize / Subject To / Binary / End).
std::string write_lp(const LpModel& model);

std::string export_mip_lp(const CostParams& params, const Workload& workload, double budget,
                          EvalMode mode);

struct LpCounts {
  std::size_t variables = 0;
  std::size_t constraints = 0;
  friend bool operator==(const LpCounts&, const LpCounts&) = default;
};

// Closed-form sizes of the model build_mip produces.
LpCounts expected_lp_counts(const CostParams& params, const Workload& workload, EvalMode mode);

struct LpCheck {
  bool ok = false;
  std::string error;  // first problem found, with its line number
  LpCounts counts;
};

// Grammar check of LP text: section headers on their own lines and in
// order, constraint syntax, numbers, identifiers, unique constraint names,
// and every used variable declared exactly once.
LpCheck validate_lp(std::string_view text);

}  // namespace partload
