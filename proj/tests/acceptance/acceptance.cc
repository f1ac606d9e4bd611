// Acceptance suite: one PASS/FAIL line per criterion. Run with
// --criterion N (1..10) or --criterion all.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fixtures.h"
#include "lp_eval.h"
#include "oracles.h"
#include "partload/baselines.h"
#include "partload/cost.h"
#include "partload/exact.h"
#include "partload/heuristics.h"
#include "partload/lp_export.h"
#include "partload/plan_io.h"
#include "partload/rawproc/calibrate.h"
#include "partload/rawproc/generate.h"
#include "partload/rawproc/runner.h"
#include "partload/workload_io.h"

namespace partload {
namespace {

using Clock = std::chrono::steady_clock;
using testing_support::Instance;
using testing_support::random_instance;
using testing_support::regime_of;

// Pinned tolerances and bounds.
constexpr double kHeuristicRatio = 1.25;
constexpr int kHeuristicRatioMinHits = 90;
constexpr double kCriterion2Seconds = 60;
constexpr double kEq46Relative = 1e-12;
constexpr double kHeuristicSpeedSeconds = 5;
constexpr double kSerialCsvTolerance = 0.20;
constexpr double kPipelinedJsonTolerance = 0.25;
constexpr double kValidationSeconds = 600;
// Two calibrations of the same sample must agree per parameter within this.
constexpr double kCalibrationRepeat = 0.20;
// Pipelined may exceed serial by this much per query and still count as
// "no slower": relative plus absolute timer noise.
constexpr double kTimerNoiseRelative = 0.02;
constexpr double kTimerNoiseAbsolute = 0.01;
constexpr double kPlanRelative = 1e-12;
constexpr std::uint64_t kValidationBytes = 100'000'000;
constexpr std::size_t kValidationAttrs = 24;
constexpr std::size_t kSampleRows = 5000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// Golden Table 1 instance: heuristic, exact and chu against the enumeration
// optimum, which must be {A1,A2,A4}.
Outcome criterion1() {
  const WorkloadDocument doc = testing_support::load_fixture("table1.json");
  const CostParams& p = doc.params;
  const double budget = testing_support::table1_budget(p, 3);
  const auto best = oracle::best_subset(p, budget, [&](std::uint64_t mask) {
    return oracle::serial_objective(p, doc.workload, oracle::mask_to_save(8, mask));
  });
  const std::uint64_t target = (1u << 0) | (1u << 1) | (1u << 3);

  const Objective obj(p, doc.workload, EvalMode::kSerial);
  const double opt = obj.value(testing_support::names_to_set(p, {"A1", "A2", "A4"}));
  const double h = combined(obj, budget, {}).report.objective;
  const double e = brute_force(obj, budget).report.objective;
  const BaselineResult c = chu(obj, budget, 60);

  std::ostringstream d;
  d << "oracle optimum mask=" << best.mask << " (A1,A2,A4 is " << target << ")"
    << " heuristic=" << format_seconds(h) << " exact=" << format_seconds(e)
    << " chu=" << format_seconds(c.report.objective) << " optimum=" << format_seconds(opt);
  const bool oracle_ok = best.mask == target && oracle::near(best.value, opt, 1e-12);
  const bool ok = oracle_ok && h == opt && e == opt && c.report.objective == opt;
  if (c.report.objective != opt) d << "; chu only loads unions of whole queries";
  return {ok, d.str()};
}

struct RandomCase {
  Instance inst;
  double budget = 0;
};

std::vector<RandomCase> criterion2_cases() {
  std::vector<RandomCase> cases;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const int n = 4 + static_cast<int>(seed % 9);  // 4..12
    const int m = 2 + static_cast<int>(seed % 7);  // 2..8
    RandomCase c;
    c.inst = random_instance(rng, n, m, regime_of(seed), TokenizationMode::kPrefix);
    c.budget = testing_support::total_bytes(c.inst.params) *
               std::uniform_real_distribution<double>(0.1, 0.7)(rng);
    cases.push_back(std::move(c));
  }
  return cases;
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  int within = 0, endpoint = 0;
  double worst = 0;
  for (const RandomCase& c : criterion2_cases()) {
    const Objective obj(c.inst.params, c.inst.workload, EvalMode::kSerial);
    const double h = combined(obj, c.budget, {}).report.objective;
    const double opt = brute_force(obj, c.budget).report.objective;
    const double cov = obj.value(query_coverage(obj, c.budget));
    const double freq = obj.value(attribute_frequency(obj, c.budget, AttributeSet(obj.num_attributes())));
    within += h <= kHeuristicRatio * opt;
    endpoint += h <= cov && h <= freq;
    worst = std::max(worst, h / opt);
  }
  const double elapsed = seconds_since(t0);
  const bool ok = within >= kHeuristicRatioMinHits && endpoint == 100 && elapsed < kCriterion2Seconds;
  std::ostringstream d;
  d << within << "/100 within " << kHeuristicRatio << "x of optimum (worst ratio "
    << fmt("%.4f", worst) << "), sweep endpoints hold on " << endpoint << "/100, "
    << fmt("%.2f", elapsed) << " s";
  return {ok, d.str()};
}

Outcome criterion3() {
  int ok_count = 0;
  std::string first_bad;
  int idx = 0;
  for (const RandomCase& c : criterion2_cases()) {
    const Objective obj(c.inst.params, c.inst.workload, EvalMode::kSerial);
    const double h = combined(obj, c.budget, {}).report.objective;
    const double cov = obj.value(query_coverage(obj, c.budget));
    const double freq = obj.value(attribute_frequency(obj, c.budget, AttributeSet(obj.num_attributes())));
    if (h <= std::min(cov, freq)) {
      ++ok_count;
    } else if (first_bad.empty()) {
      first_bad = " first violation at instance " + std::to_string(idx);
    }
    ++idx;
  }
  return {ok_count == 100,
          std::to_string(ok_count) + "/100 combined <= min(coverage-only, frequency-only)" + first_bad};
}

Outcome criterion4() {
  int monotone = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(2000 + seed);
    const int n = 3 + static_cast<int>(seed % 8);  // 3..10
    const Instance inst = random_instance(rng, n, 2 + static_cast<int>(seed % 6), regime_of(seed),
                                          static_cast<TokenizationMode>(seed % 3));
    const Objective obj(inst.params, inst.workload, EvalMode::kSerial);
    const double unit = testing_support::total_bytes(inst.params) / n;
    bool ok = true;
    double prev = 0;
    for (int k = 0; k <= n; ++k) {
      const double v = brute_force(obj, k * unit).report.objective;
      if (k > 0 && v > prev) ok = false;
      prev = v;
    }
    monotone += ok;
  }
  return {monotone == 25, std::to_string(monotone) + "/25 instances non-increasing over B = 0..n"};
}

// PT for a single-query model equal to `target` (or unbounded when < 0):
// uniform parse cost of one second per attribute over all rows.
CostParams threshold_params(int n, long target) {
  CostParams p;
  p.row_count = 1000;
  p.bandwidth = 1e9;
  p.tokenization_mode = TokenizationMode::kAtomic;
  const double parse = target < 0 ? 0.0 : 1e-3;
  for (int j = 0; j < n; ++j) p.attributes.push_back({j, "a" + std::to_string(j), 8, 0, parse});
  if (target <= 0) {
    p.raw_size = 1e9;  // 1 s raw read
    if (target == 0) {
      for (Attribute& a : p.attributes) a.t_tok = 2.0 / (1000.0 * n);  // tokenize exceeds the raw read
    }
  } else {
    p.raw_size = (static_cast<double>(target) - 0.5) * 1e9;
  }
  return p;
}

Outcome criterion5() {
  // Max form versus linearized form on random plans.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  int plans = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const int n = 1 + inst % 8;
    CostParams p;
    p.row_count = 1'000'000;
    p.bandwidth = 1e9;
    p.raw_size = 1e8 + u(rng) * 5e9;
    p.tokenization_mode = inst % 2 ? TokenizationMode::kAtomic : TokenizationMode::kNone;
    const double parse = 1e-8 + u(rng) * 1e-6;  // uniform across attributes
    for (int j = 0; j < n; ++j) {
      const double tok = p.tokenization_mode == TokenizationMode::kNone ? 0.0 : u(rng) * 5e-8;
      p.attributes.push_back({j, "a" + std::to_string(j), 4 + 4.0 * (j % 3), tok, parse});
    }
    const ParseThreshold pt = parse_threshold(p);
    for (int k = 0; k < 100; ++k, ++plans) {
      QueryPlan plan;
      plan.reads_raw = u(rng) < 0.85;
      plan.tokenized = plan.reads_raw ? AttributeSet::all(n) : AttributeSet(n);
      plan.parsed = AttributeSet(n);
      plan.read_loaded = AttributeSet(n);
      for (int j = 0; j < n; ++j) {
        const double r = u(rng);
        if (plan.reads_raw && r < 0.5) {
          plan.parsed.insert(j);
        } else if (r < 0.8) {
          plan.read_loaded.insert(j);
        }
      }
      const double a = query_time_pipelined(p, plan, pt);
      const double b = query_time_pipelined_linearized(p, plan, pt);
      worst = std::max(worst, std::fabs(a - b) / std::max(std::fabs(a), 1e-300));
    }
  }
  const bool forms_ok = worst <= kEq46Relative;

  // Classification boundary: every parsed subset for n <= 8, every PT in
  // [0, n + 1] plus the unbounded sentinel, against the rule and against
  // the C17/C18 rows of the exported model.
  long checked = 0, wrong = 0;
  for (int n = 1; n <= 8; ++n) {
    for (long target = -1; target <= n + 1; ++target) {
      const CostParams p = threshold_params(n, target);
      const ParseThreshold pt = parse_threshold(p);
      const bool pt_ok = target < 0 ? pt.unbounded : (!pt.unbounded && pt.pt == static_cast<std::uint64_t>(target));
      if (!pt_ok) {
        ++wrong;
        continue;
      }
      Workload w;
      Query q;
      q.id = "q";
      for (int j = 0; j < n; ++j) q.attrs.push_back(j);
      w.queries.push_back(q);
      const LpModel model = build_mip(p, w, 1e30, EvalMode::kPipelined);
      const auto idx = lp_eval::index_of(model);
      const LpConstraint* c17 = nullptr;
      const LpConstraint* c18 = nullptr;
      for (const LpConstraint& c : model.constraints) {
        if (c.name == "c17_1") c17 = &c;
        if (c.name == "c18_1") c18 = &c;
      }
      if (c17 == nullptr || c18 == nullptr) return {false, "model lacks threshold rows"};
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        QueryPlan plan;
        plan.reads_raw = true;
        plan.tokenized = AttributeSet::all(n);
        plan.parsed = AttributeSet(n);
        plan.read_loaded = AttributeSet(n);
        for (int j = 0; j < n; ++j) {
          if ((mask >> j) & 1u) plan.parsed.insert(j);
        }
        const std::size_t parsed = plan.parsed.count();
        const bool expect_cpu = target >= 0 && parsed >= static_cast<std::size_t>(target);
        const QueryClass got = classify_query(plan, pt);
        std::vector<bool> admitted;
        for (int cpu = 0; cpu <= 1; ++cpu) {
          std::vector<double> x(model.variables.size(), 0.0);
          for (int j = 0; j < n; ++j) {
            x[static_cast<std::size_t>(idx.at("p_1_" + std::to_string(j)))] = (mask >> j) & 1u;
          }
          x[static_cast<std::size_t>(idx.at("cpu_1"))] = cpu;
          x[static_cast<std::size_t>(idx.at("io_1"))] = 1 - cpu;
          admitted.push_back(lp_eval::satisfies(*c17, x) && lp_eval::satisfies(*c18, x));
        }
        const bool lp_ok = admitted[expect_cpu ? 1 : 0] && !admitted[expect_cpu ? 0 : 1];
        const bool rule_ok = (got == QueryClass::kCpuBound) == expect_cpu;
        ++checked;
        wrong += !(lp_ok && rule_ok);
      }
    }
  }
  std::ostringstream d;
  d << plans << " plans, worst relative gap " << fmt("%.3g", worst) << "; " << checked
    << " boundary cases, " << wrong << " mismatches";
  return {forms_ok && wrong == 0, d.str()};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  CostParams p;
  p.row_count = 1'000'000;
  p.bandwidth = 5e8;
  p.raw_size = 22e9 / 40;  // SDSS-shaped, scaled to a million rows
  p.tokenization_mode = TokenizationMode::kPrefix;
  for (int j = 0; j < 509; ++j) {
    p.attributes.push_back({j, "c" + std::to_string(j), u(rng) < 0.5 ? 4.0 : 8.0,
                            1e-9 + u(rng) * 2e-8, 2e-8 + u(rng) * 3e-7});
  }
  Workload w = gen_synthetic_workload(509, 100, 20, 20, 509, 6);
  for (Query& q : w.queries) q.weight = 0.1 + u(rng) * 10;
  const Objective obj(p, w, EvalMode::kSerial);
  const double budget = 0.25 * testing_support::total_bytes(p);
  const auto t0 = Clock::now();
  const HeuristicResult r = combined(obj, budget, {});
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "n=509 m=100: " << fmt("%.3f", elapsed) << " s, " << r.loaded.count() << " attributes loaded";
  return {elapsed < kHeuristicSpeedSeconds, d.str()};
}

struct Validation {
  std::vector<double> predicted;
  rawproc::RunResult measured;
  double worst = 0;
  std::string note;
};

double worst_prefix_error(const std::vector<double>& predicted, const std::vector<double>& measured) {
  double worst = 0;
  for (std::size_t k = 0; k < predicted.size() && k < measured.size(); ++k) {
    if (measured[k] == 0 && predicted[k] == 0) continue;
    worst = std::max(worst, std::fabs(predicted[k] - measured[k]) / measured[k]);
  }
  return worst;
}

std::vector<double> predicted_cumulative(const CostReport& report) {
  std::vector<double> out{report.load_time};
  for (const QueryCost& q : report.per_query) out.push_back(out.back() + q.seconds);
  return out;
}

std::string series(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt("%.3f", x);
  return s;
}

struct ValidationSetup {
  rawproc::RawFormat format;
  std::string path;
  rawproc::RawSchema schema;
  CostParams params;
  Workload workload;
};

ValidationSetup prepare(rawproc::FormatKind kind, const std::string& workload_fixture,
                        const std::string& file_name) {
  ValidationSetup s;
  s.format.kind = kind;
  const std::filesystem::path dir = std::filesystem::path(PARTLOAD_SCRATCH_DIR);
  std::filesystem::create_directories(dir);
  s.path = (dir / file_name).string();
  s.schema = rawproc::make_schema(kind, kValidationAttrs, 1);
  const std::uint64_t rows = rawproc::rows_for_bytes(s.format, s.schema, kValidationBytes, 7);
  rawproc::gen_raw(s.format, s.schema, rows, 7, s.path);
  rawproc::CalibrationOptions opt;
  opt.sample_rows = kSampleRows;
  s.params = rawproc::calibrate(s.format, s.path, opt).params;
  s.workload = parse_queries(read_text_file(testing_support::fixture_path(workload_fixture)), s.params);
  return s;
}

double mid_budget(const CostParams& p, const Workload& w) {
  const AttributeSet ref = referenced_attributes(w, p.num_attributes());
  return 0.5 * bytes_of(p, ref);
}

rawproc::RunResult execute(const ValidationSetup& s, const AttributeSet& loaded, EvalMode mode) {
  rawproc::RunOptions opt;
  opt.mode = mode;
  opt.dataset_dir = s.path + ".cols";
  return rawproc::run_workload(s.format, s.path, s.schema, s.params, s.workload, loaded, opt);
}

// Largest relative difference over every calibrated parameter.
double calibration_spread(const CostParams& a, const CostParams& b) {
  auto rel = [](double x, double y) {
    const double m = std::max(std::abs(x), std::abs(y));
    return m > 0 ? std::abs(x - y) / m : 0.0;
  };
  double worst = rel(a.bandwidth, b.bandwidth);
  for (std::size_t j = 0; j < a.num_attributes(); ++j) {
    worst = std::max(worst, rel(a.attributes[j].t_tok, b.attributes[j].t_tok));
    worst = std::max(worst, rel(a.attributes[j].t_parse, b.attributes[j].t_parse));
  }
  return worst;
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  const ValidationSetup s = prepare(rawproc::FormatKind::kCsv, "validation_csv.json", "validation.csv");
  const Objective obj(s.params, s.workload, EvalMode::kSerial);
  const HeuristicResult plan = combined(obj, mid_budget(s.params, s.workload), {});
  const rawproc::RunResult run = execute(s, plan.loaded, EvalMode::kSerial);
  const auto predicted = predicted_cumulative(plan.report);
  const auto measured = rawproc::measured_cumulative(run);
  const double worst = worst_prefix_error(predicted, measured);
  rawproc::CalibrationOptions opt;
  opt.sample_rows = kSampleRows;
  const double spread = calibration_spread(s.params, rawproc::calibrate(s.format, s.path, opt).params);
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "worst prefix error " << fmt("%.1f", 100 * worst) << "% (" << plan.loaded.count()
    << " columns loaded), predicted [" << series(predicted) << "] measured [" << series(measured)
    << "], recalibration spread " << fmt("%.1f", 100 * spread) << "%, " << fmt("%.0f", elapsed)
    << " s" << (run.caches_dropped ? "" : ", cache eviction unverified");
  std::filesystem::remove_all(s.path + ".cols");
  return {worst <= kSerialCsvTolerance && spread < kCalibrationRepeat && elapsed < kValidationSeconds,
          d.str()};
}

Outcome criterion8() {
  const auto t0 = Clock::now();
  const ValidationSetup s =
      prepare(rawproc::FormatKind::kJsonLines, "validation_json.json", "validation.json");
  const Objective obj(s.params, s.workload, EvalMode::kPipelined);
  const HeuristicResult plan = combined_pipelined(obj, mid_budget(s.params, s.workload), {});
  const rawproc::RunResult pipe = execute(s, plan.loaded, EvalMode::kPipelined);
  const rawproc::RunResult serial = execute(s, plan.loaded, EvalMode::kSerial);
  const auto predicted = predicted_cumulative(plan.report);
  const auto measured = rawproc::measured_cumulative(pipe);
  const double worst = worst_prefix_error(predicted, measured);
  int slower = 0;
  std::string slower_ids;
  for (std::size_t i = 0; i < pipe.queries.size(); ++i) {
    const double limit =
        serial.queries[i].wall * (1 + kTimerNoiseRelative) + kTimerNoiseAbsolute;
    if (pipe.queries[i].wall > limit) {
      ++slower;
      slower_ids += " " + pipe.queries[i].query_id + fmt(" %.3f", pipe.queries[i].wall) + fmt("/%.3f", serial.queries[i].wall);
    }
  }
  const bool same_answers = pipe.checksums == serial.checksums;
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "worst prefix error " << fmt("%.1f", 100 * worst) << "% (" << plan.loaded.count()
    << " columns loaded), predicted [" << series(predicted) << "] measured [" << series(measured)
    << "]; pipelined slower than serial on " << slower << "/" << pipe.queries.size()
    << " queries" << slower_ids << "; serial [" << series(rawproc::measured_cumulative(serial)) << "]"
    << (same_answers ? "" : "; checksums differ") << ", " << fmt("%.0f", elapsed) << " s";
  std::filesystem::remove_all(s.path + ".cols");
  return {worst <= kPipelinedJsonTolerance && slower == 0 && same_answers &&
              elapsed < kValidationSeconds,
          d.str()};
}

// Closed-form model sizes, written out independently of the exporter.
LpCounts closed_form(const CostParams& p, const Workload& w, EvalMode mode) {
  const std::size_t n = p.num_attributes(), m = w.size();
  std::size_t accessed = 0;
  for (const Query& q : w.queries) accessed += q.attrs.size();
  // save, raw_0..m, t and p for queries 0..m, read for 1..m
  std::size_t vars = n + (m + 1) + 2 * (m + 1) * n + m * n;
  // C1, C2, C3 (three rows per attribute), C4 (two per pair), C5, C6
  const std::size_t c5 = p.tokenization_mode == TokenizationMode::kPrefix ? (m + 1) * n * (n - 1) / 2
                                                                           : (m + 1) * (n - 1);
  std::size_t rows = 1 + m * n + 3 * n + 2 * m * n + c5 + accessed;
  if (mode == EvalMode::kPipelined) {
    vars += m * (2 + 2) + m * n * 4;        // cpu, io, cpuraw, ioraw; cput, iot, cpup, iop
    rows += m;                              // C7
    rows += m + 2 * m * n;                  // C8-C10 splits
    rows += 2 * m + 4 * m * n;              // C11-C16 class gating
    rows += 2 * m;                          // C17, C18
  }
  return {vars, rows};
}

Outcome criterion9() {
  int ok = 0;
  std::string first_error;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(9000 + seed);
    const auto mode = static_cast<TokenizationMode>(seed % 3);
    const Instance inst = random_instance(rng, 3 + static_cast<int>(seed % 8),
                                          1 + static_cast<int>(seed % 6), regime_of(seed), mode);
    const double budget = 0.5 * testing_support::total_bytes(inst.params);
    bool good = true;
    for (EvalMode em : {EvalMode::kSerial, EvalMode::kPipelined}) {
      if (em == EvalMode::kPipelined && mode == TokenizationMode::kPrefix) continue;
      const LpCheck check = validate_lp(export_mip_lp(inst.params, inst.workload, budget, em));
      const LpCounts expect = closed_form(inst.params, inst.workload, em);
      if (!check.ok || !(check.counts == expect)) {
        good = false;
        if (first_error.empty()) {
          first_error = "instance " + std::to_string(seed) + ": " +
                        (check.ok ? "counts " + std::to_string(check.counts.variables) + "/" +
                                        std::to_string(check.counts.constraints) + " expected " +
                                        std::to_string(expect.variables) + "/" +
                                        std::to_string(expect.constraints)
                                  : check.error);
        }
      }
    }
    ok += good;
  }
  return {ok == 20, std::to_string(ok) + "/20 exports valid with closed-form counts" +
                        (first_error.empty() ? "" : "; " + first_error)};
}

Outcome criterion10() {
  std::mt19937_64 rng(10);
  int equal = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 10;
    const auto mode = static_cast<TokenizationMode>(trial % 3);
    const Instance inst = random_instance(rng, n, 1, regime_of(static_cast<std::uint64_t>(trial)), mode);
    AttributeSet loaded(static_cast<std::size_t>(n));
    std::vector<bool> save(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      if (rng() % 2) {
        loaded.insert(j);
        save[static_cast<std::size_t>(j)] = true;
      }
    }
    const Query& q = inst.workload.queries[0];
    const QueryPlan plan = derive_query_plan(CostModel(inst.params), loaded, q);
    oracle::Assignment a;
    a.raw = plan.reads_raw;
    a.t.assign(static_cast<std::size_t>(n), false);
    a.p = a.read = a.t;
    plan.tokenized.for_each([&](int j) { a.t[static_cast<std::size_t>(j)] = true; });
    plan.parsed.for_each([&](int j) { a.p[static_cast<std::size_t>(j)] = true; });
    plan.read_loaded.for_each([&](int j) { a.read[static_cast<std::size_t>(j)] = true; });
    const bool feasible = oracle::feasible(inst.params, save, q.attrs, a);
    const double best = oracle::min_serial_time(inst.params, save, q.attrs);
    equal += feasible && oracle::near(oracle::serial_time(inst.params, a), best, kPlanRelative);
  }
  return {equal == 1000, std::to_string(equal) + "/1000 derived plans feasible and optimal"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"golden Table 1 instance", criterion1},
      {"oracle closeness", criterion2},
      {"stage dominance", criterion3},
      {"budget monotonicity", criterion4},
      {"pipelined consistency", criterion5},
      {"heuristic speed", criterion6},
      {"model validation, serial csv", criterion7},
      {"model validation, pipelined json-lines", criterion8},
      {"LP export", criterion9},
      {"plan derivation optimality", criterion10},
  };
  return all;
}

}  // namespace
}  // namespace partload

int main(int argc, char** argv) {
  CLI::App app("partload acceptance suite");
  std::string which = "all";
  app.add_option("--criterion", which, "Criterion number 1-10 or 'all'");
  CLI11_PARSE(app, argc, argv);

  const auto& all = partload::criteria();
  std::vector<std::size_t> selected;
  if (which == "all") {
    for (std::size_t k = 0; k < all.size(); ++k) selected.push_back(k);
  } else {
    const int k = std::atoi(which.c_str());
    if (k < 1 || k > static_cast<int>(all.size())) {
      std::cerr << "unknown criterion " << which << "\n";
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(k - 1));
  }
  bool all_pass = true;
  for (std::size_t k : selected) {
    partload::Outcome o;
    try {
      o = all[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << " (" << all[k].first
              << "): " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
