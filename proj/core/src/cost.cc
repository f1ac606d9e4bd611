#include "partload/cost.h"

#include <algorithm>
#include <cmath>

#include "partload/errors.h"
#include "partload/objective.h"

namespace partload {

CostModel::CostModel(const CostParams& params) : params_(params) {
  const double rows = static_cast<double>(params.row_count);
  raw_ = params.raw_size / params.bandwidth;
  const std::size_t n = params.attributes.size();
  parse_.resize(n);
  read_.resize(n);
  tok_prefix_.resize(n);
  double tok = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Attribute& a = params.attributes[j];
    parse_[j] = rows * a.t_parse;
    read_[j] = rows * a.spf / params.bandwidth;
    tok += a.t_tok;
    tok_prefix_[j] = rows * tok;
  }
}

namespace {

bool is_prefix_mode(const CostModel& model) { return model.mode() == TokenizationMode::kPrefix; }

// Fills parse/read terms for a fixed endpoint: needed attributes beyond the
// endpoint must come from their columns, the rest take the cheaper route.
void fill_terms(const CostModel& model, const AttributeSet& loaded, std::span<const int> attrs,
                int end, PlanChoice& c) {
  c.terms.parse = 0;
  c.terms.loaded_read = 0;
  c.parsed_count = 0;
  for (int a : attrs) {
    const double parse = model.parse_seconds(a);
    if (!loaded.contains(a)) {
      c.terms.parse += parse;
      ++c.parsed_count;
      continue;
    }
    const double read = model.read_seconds(a);
    if (a <= end && parse < read) {
      c.terms.parse += parse;
      ++c.parsed_count;
    } else {
      c.terms.loaded_read += read;
    }
  }
}

}  // namespace

PlanChoice choose_plan(const CostModel& model, const AttributeSet& loaded,
                       std::span<const int> attrs) {
  // Sum of needed-unloaded parse costs, plus the loaded needed attributes.
  double unloaded_parse = 0;
  int unloaded_max = -1;
  double covered_read = 0;
  bool all_loaded = true;
  for (int a : attrs) {
    if (loaded.contains(a)) {
      covered_read += model.read_seconds(a);
    } else {
      all_loaded = false;
      unloaded_parse += model.parse_seconds(a);
      unloaded_max = a;
    }
  }

  const double raw = model.raw_seconds();
  int best_end = -1;
  double best_cost = 0;
  bool have_raw = false;

  if (!is_prefix_mode(model)) {
    best_end = static_cast<int>(model.num_attributes()) - 1;
    double cost = raw + model.tokenize_all() + unloaded_parse;
    for (int a : attrs) {
      if (loaded.contains(a)) cost += std::min(model.parse_seconds(a), model.read_seconds(a));
    }
    best_cost = cost;
    have_raw = true;
  } else {
    // Endpoint e covers loaded attributes at positions <= e; those beyond it
    // are read. Candidates: max(unloaded) and every loaded position past it.
    double min_upto = 0;   // sum of min(parse, read) over loaded attrs <= e
    double read_after = 0; // sum of read over loaded attrs > e
    for (int a : attrs) {
      if (!loaded.contains(a)) continue;
      if (a <= unloaded_max) {
        min_upto += std::min(model.parse_seconds(a), model.read_seconds(a));
      } else {
        read_after += model.read_seconds(a);
      }
    }
    if (unloaded_max >= 0) {
      best_end = unloaded_max;
      best_cost = raw + model.tokenize_through(unloaded_max) + unloaded_parse + min_upto + read_after;
      have_raw = true;
    }
    // Loaded attributes past max(unloaded), with suffix sums of their reads.
    std::vector<int> tail;
    for (int a : attrs) {
      if (a > unloaded_max && loaded.contains(a)) tail.push_back(a);
    }
    std::vector<double> read_suffix(tail.size() + 1, 0.0);
    for (std::size_t k = tail.size(); k-- > 0;) {
      read_suffix[k] = read_suffix[k + 1] + model.read_seconds(tail[k]);
    }
    for (std::size_t k = 0; k < tail.size(); ++k) {
      const int a = tail[k];
      min_upto += std::min(model.parse_seconds(a), model.read_seconds(a));
      const double cost =
          raw + model.tokenize_through(a) + unloaded_parse + min_upto + read_suffix[k + 1];
      if (!have_raw || cost < best_cost) {
        best_cost = cost;
        best_end = a;
        have_raw = true;
      }
    }
  }

  PlanChoice choice;
  if (all_loaded && (!have_raw || covered_read <= best_cost)) {
    choice.reads_raw = false;
    choice.terms.loaded_read = covered_read;
    return choice;
  }
  choice.reads_raw = true;
  choice.tokenize_end = best_end;
  choice.terms.raw_read = raw;
  choice.terms.tokenize = is_prefix_mode(model) ? model.tokenize_through(best_end) : model.tokenize_all();
  fill_terms(model, loaded, attrs, best_end, choice);
  return choice;
}

QueryPlan derive_query_plan(const CostModel& model, const AttributeSet& loaded, const Query& query) {
  const std::size_t n = model.num_attributes();
  const PlanChoice c = choose_plan(model, loaded, query.attrs);
  QueryPlan plan;
  plan.query_id = query.id;
  plan.reads_raw = c.reads_raw;
  plan.tokenized = AttributeSet(n);
  plan.parsed = AttributeSet(n);
  plan.read_loaded = AttributeSet(n);
  if (!c.reads_raw) {
    for (int a : query.attrs) plan.read_loaded.insert(a);
    plan.classification = QueryClass::kCovered;
    return plan;
  }
  for (int j = 0; j <= c.tokenize_end; ++j) plan.tokenized.insert(j);
  for (int a : query.attrs) {
    const bool parse = !loaded.contains(a) ||
                       (a <= c.tokenize_end && model.parse_seconds(a) < model.read_seconds(a));
    if (parse) {
      plan.parsed.insert(a);
    } else {
      plan.read_loaded.insert(a);
    }
  }
  plan.classification =
      c.terms.raw_read >= c.extraction() ? QueryClass::kIoBound : QueryClass::kCpuBound;
  return plan;
}

QueryPlan derive_query_plan(const CostParams& params, const LoadPlan& loaded, const Query& query) {
  return derive_query_plan(CostModel(params), loaded.loaded, query);
}

double load_time(const CostModel& model, const AttributeSet& loaded) {
  const int last = loaded.max_index();
  if (last < 0) return 0.0;
  double parse = 0;
  double write = 0;
  loaded.for_each([&](int j) {
    parse += model.parse_seconds(j);
    write += model.read_seconds(j);
  });
  const double tok = model.mode() == TokenizationMode::kPrefix ? model.tokenize_through(last)
                                                               : model.tokenize_all();
  return model.raw_seconds() + tok + parse + write;
}

double load_time(const CostParams& params, const LoadPlan& loaded) {
  if (!within_budget(bytes_of(params, loaded.loaded), loaded.budget)) {
    fail(ErrorKind::kBudgetViolation, "load plan exceeds its storage budget");
  }
  return load_time(CostModel(params), loaded.loaded);
}

namespace {

TermBreakdown plan_terms(const CostParams& params, const QueryPlan& plan) {
  const double rows = static_cast<double>(params.row_count);
  double tok = 0;
  double parse = 0;
  double spf = 0;
  plan.tokenized.for_each([&](int j) { tok += params.attributes[static_cast<std::size_t>(j)].t_tok; });
  plan.parsed.for_each([&](int j) { parse += params.attributes[static_cast<std::size_t>(j)].t_parse; });
  plan.read_loaded.for_each([&](int j) { spf += params.attributes[static_cast<std::size_t>(j)].spf; });
  TermBreakdown t;
  t.raw_read = plan.reads_raw ? params.raw_size / params.bandwidth : 0.0;
  t.tokenize = rows * tok;
  t.parse = rows * parse;
  t.loaded_read = rows * spf / params.bandwidth;
  return t;
}

void require_pipelinable(const CostParams& params) {
  if (params.tokenization_mode == TokenizationMode::kPrefix) {
    fail(ErrorKind::kModeUnsupported,
         "pipelined evaluation needs atomic or no tokenization; prefix tokenization cannot be "
         "classified into io- and cpu-bound queries");
  }
}

}  // namespace

double query_time_serial(const CostParams& params, const QueryPlan& plan) {
  const TermBreakdown t = plan_terms(params, plan);
  return t.raw_read + t.tokenize + t.parse + t.loaded_read;
}

ParseThreshold parse_threshold(const CostParams& params) {
  require_pipelinable(params);
  const double rows = static_cast<double>(params.row_count);
  double tok = 0;
  double parse = 0;
  for (const Attribute& a : params.attributes) {
    tok += a.t_tok;
    parse += a.t_parse;
  }
  if (parse <= 0 || params.attributes.empty()) return ParseThreshold::infinite();
  const double numerator = params.raw_size / params.bandwidth - rows * tok;
  if (numerator <= 0) return ParseThreshold::of(0);
  const double avg_parse = rows * parse / static_cast<double>(params.attributes.size());
  const double ratio = std::ceil(numerator / avg_parse);
  if (!(ratio < 1.8e19)) return ParseThreshold::infinite();
  return ParseThreshold::of(static_cast<std::uint64_t>(ratio));
}

QueryClass classify_parsed_count(std::size_t parsed, ParseThreshold pt) {
  if (pt.unbounded) return QueryClass::kIoBound;
  return parsed >= pt.pt ? QueryClass::kCpuBound : QueryClass::kIoBound;
}

QueryClass classify_query(const QueryPlan& plan, ParseThreshold pt) {
  if (!plan.reads_raw) return QueryClass::kCovered;
  return classify_parsed_count(plan.parsed.count(), pt);
}

double query_time_pipelined(const CostParams& params, const QueryPlan& plan, ParseThreshold pt) {
  require_pipelinable(params);
  (void)pt;
  const TermBreakdown t = plan_terms(params, plan);
  const double cpu = t.tokenize + t.parse;
  return t.loaded_read + std::max(t.raw_read, cpu);
}

double query_time_pipelined_linearized(const CostParams& params, const QueryPlan& plan,
                                       ParseThreshold pt) {
  require_pipelinable(params);
  const TermBreakdown t = plan_terms(params, plan);
  switch (classify_query(plan, pt)) {
    case QueryClass::kCovered: return t.loaded_read;
    case QueryClass::kIoBound: return t.raw_read + t.loaded_read;
    case QueryClass::kCpuBound: return t.loaded_read + (t.tokenize + t.parse);
  }
  return 0;
}

CostReport objective_serial(const CostParams& params, const Workload& workload,
                            const LoadPlan& loaded) {
  if (!within_budget(bytes_of(params, loaded.loaded), loaded.budget)) {
    fail(ErrorKind::kBudgetViolation, "load plan exceeds its storage budget");
  }
  return Objective(params, workload, EvalMode::kSerial).report(loaded.loaded);
}

CostReport objective_pipelined(const CostParams& params, const Workload& workload,
                               const LoadPlan& loaded) {
  if (!within_budget(bytes_of(params, loaded.loaded), loaded.budget)) {
    fail(ErrorKind::kBudgetViolation, "load plan exceeds its storage budget");
  }
  return Objective(params, workload, EvalMode::kPipelined).report(loaded.loaded);
}

}  // namespace partload
