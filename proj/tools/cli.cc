#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "partload/baselines.h"
#include "partload/errors.h"
#include "partload/exact.h"
#include "partload/heuristics.h"
#include "partload/lp_export.h"
#include "partload/plan_io.h"
#include "partload/rawproc/calibrate.h"
#include "partload/rawproc/generate.h"
#include "partload/rawproc/reader.h"
#include "partload/rawproc/runner.h"
#include "partload/workload_io.h"

namespace partload::cli {

namespace {

const std::vector<std::string> kAlgorithms = {"heuristic", "coverage", "frequency", "exact",
                                              "navathe",   "chu",      "agrawal"};

WorkloadDocument load_instance(const std::string& workload_path, const std::string& params_path) {
  const std::string text = read_text_file(workload_path);
  if (params_path.empty()) return parse_workload(text);
  WorkloadDocument doc;
  doc.params = read_workload_file(params_path).params;
  doc.workload = parse_queries(text, doc.params);
  return doc;
}

struct BudgetFlags {
  double bytes = 0;
  double attrs = 0;
  CLI::Option* bytes_opt = nullptr;
  CLI::Option* attrs_opt = nullptr;

  void add(CLI::App* app) {
    bytes_opt = app->add_option("--budget", bytes, "Storage budget in bytes");
    attrs_opt = app->add_option("--budget-attrs", attrs,
                                "Budget as a number of attributes of the (uniform) attribute size");
    bytes_opt->excludes(attrs_opt);
  }
  bool given() const { return bytes_opt->count() > 0 || attrs_opt->count() > 0; }

  double resolve(const CostParams& params) const {
    if (bytes_opt->count() > 0) {
      if (!(bytes >= 0)) fail(ErrorKind::kInvalidInput, "--budget must be nonnegative");
      return bytes;
    }
    if (attrs_opt->count() == 0) fail(ErrorKind::kInvalidInput, "--budget or --budget-attrs is required");
    if (!(attrs >= 0)) fail(ErrorKind::kInvalidInput, "--budget-attrs must be nonnegative");
    if (params.num_attributes() == 0) fail(ErrorKind::kInvalidInput, "schema has no attributes");
    const double size = params.column_bytes(0);
    for (std::size_t j = 1; j < params.num_attributes(); ++j) {
      if (params.column_bytes(static_cast<int>(j)) != size) {
        fail(ErrorKind::kInvalidInput, "--budget-attrs needs uniform attribute sizes; use --budget");
      }
    }
    return attrs * size;
  }
};

// Leading space included so an empty set prints as a bare "loaded:".
std::string names_of(const CostParams& params, const AttributeSet& set) {
  std::string s;
  set.for_each([&](int j) {
    if (!s.empty()) s += ',';
    s += params.attributes[static_cast<std::size_t>(j)].name;
  });
  return s.empty() ? s : " " + s;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

// ---------------------------------------------------------------------------

struct OptimizeArgs {
  std::string workload, params, algo = "heuristic", mode = "serial", out;
  BudgetFlags budget;
  double delta = 0, time_cap = 60, threshold = 0.2;
  unsigned threads = 1;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  const WorkloadDocument doc = load_instance(a.workload, a.params);
  const double budget = a.budget.resolve(doc.params);
  const EvalMode mode = eval_mode_from_string(a.mode);
  const Objective objective(doc.params, doc.workload, mode);

  AttributeSet loaded;
  std::vector<SweepPoint> sweep;
  bool capped = false;
  if (a.algo == "heuristic") {
    const HeuristicConfig config{a.delta, mode};
    const HeuristicResult r = mode == EvalMode::kPipelined
                                  ? combined_pipelined(objective, budget, config)
                                  : combined(objective, budget, config);
    loaded = r.loaded;
    sweep = r.sweep;
  } else if (a.algo == "coverage") {
    loaded = query_coverage(objective, budget);
  } else if (a.algo == "frequency") {
    loaded = attribute_frequency(objective, budget, AttributeSet(objective.num_attributes()),
                                 mode == EvalMode::kPipelined);
  } else if (a.algo == "exact") {
    loaded = brute_force(objective, budget, a.threads).loaded;
  } else if (a.algo == "navathe") {
    loaded = navathe(objective, budget).loaded;
  } else if (a.algo == "chu") {
    if (!(a.time_cap > 0)) fail(ErrorKind::kInvalidInput, "--time-cap must be positive");
    const BaselineResult r = chu(objective, budget, a.time_cap);
    loaded = r.loaded;
    capped = r.capped;
  } else {
    loaded = agrawal(objective, budget, a.threshold).loaded;
  }

  const double value = objective.value(loaded);
  PlanDocument plan = make_plan_document(doc.params, a.algo, mode, budget, loaded, value);
  plan.sweep = std::move(sweep);
  plan.capped = capped;
  if (!a.out.empty()) write_text_file(a.out, serialize_plan(plan));
  out << "algorithm: " << a.algo << "\n"
      << "mode: " << to_string(mode) << "\n"
      << "loaded:" << names_of(doc.params, loaded) << "\n"
      << "used_bytes: " << format_seconds(plan.used_bytes) << "\n"
      << "objective_sec: " << format_seconds(value) << "\n";
  if (capped) out << "note: time cap reached; best plan found so far\n";
  if (a.out.empty()) out << serialize_plan(plan);
  return kExitOk;
}

struct EvaluateArgs {
  std::string workload, params, plan, load, mode, out, csv;
  BudgetFlags budget;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const WorkloadDocument doc = load_instance(a.workload, a.params);
  AttributeSet loaded(doc.params.num_attributes());
  EvalMode mode = EvalMode::kSerial;
  double budget = std::numeric_limits<double>::infinity();
  if (!a.plan.empty()) {
    const PlanDocument plan = parse_plan(read_text_file(a.plan));
    loaded = plan_attributes(plan, doc.params);
    mode = plan.mode;
    if (plan.budget > 0) budget = plan.budget;
  } else {
    PlanDocument plan;
    std::string_view rest = a.load;
    while (!rest.empty()) {
      const std::size_t c = rest.find(',');
      plan.loaded.emplace_back(rest.substr(0, c));
      rest = c == std::string_view::npos ? std::string_view() : rest.substr(c + 1);
    }
    loaded = plan_attributes(plan, doc.params);
  }
  if (!a.mode.empty()) mode = eval_mode_from_string(a.mode);
  if (a.budget.given()) budget = a.budget.resolve(doc.params);

  const LoadPlan lp = make_load_plan(doc.params, loaded, budget);
  const CostReport report = mode == EvalMode::kPipelined
                                ? objective_pipelined(doc.params, doc.workload, lp)
                                : objective_serial(doc.params, doc.workload, lp);
  if (!a.out.empty()) write_text_file(a.out, report_to_json(report));
  if (!a.csv.empty()) write_text_file(a.csv, report_to_cumulative_csv(report));
  out << "mode: " << to_string(mode) << "\n"
      << "loaded:" << names_of(doc.params, loaded) << "\n"
      << "load_time_sec: " << format_seconds(report.load_time) << "\n"
      << "objective_sec: " << format_seconds(report.objective) << "\n";
  return kExitOk;
}

struct ExportArgs {
  std::string workload, params, mode = "serial", out;
  BudgetFlags budget;
};

int cmd_export_lp(const ExportArgs& a, std::ostream& out) {
  const WorkloadDocument doc = load_instance(a.workload, a.params);
  const double budget = a.budget.resolve(doc.params);
  const EvalMode mode = eval_mode_from_string(a.mode);
  const LpModel model = build_mip(doc.params, doc.workload, budget, mode);
  const std::string text = write_lp(model);
  write_or_print(a.out, text, out);
  if (!a.out.empty() && a.out != "-") {
    out << "variables: " << model.variables.size() << "\n"
        << "constraints: " << model.constraints.size() << "\n";
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string format, raw, workload, params, plan, mode = "serial", dataset_dir, out_dir;
  unsigned reps = 3, consumers = 0;
  bool keep_caches = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const rawproc::RawFormat format{rawproc::format_kind_from_string(a.format)};
  const EvalMode mode = eval_mode_from_string(a.mode);
  if (mode == EvalMode::kPipelined &&
      rawproc::tokenization_mode_of(format.kind) == TokenizationMode::kPrefix) {
    fail(ErrorKind::kModeUnsupported, "pipelined execution is not supported for csv (prefix tokenization)");
  }
  const WorkloadDocument doc = load_instance(a.workload, a.params);
  const PlanDocument plan = parse_plan(read_text_file(a.plan));
  const AttributeSet loaded = plan_attributes(plan, doc.params);
  const rawproc::RawSchema schema = rawproc::detect_schema(format, a.raw);

  rawproc::RunOptions options;
  options.mode = mode;
  options.dataset_dir = a.dataset_dir.empty() ? a.raw + ".cols" : a.dataset_dir;
  options.repetitions = a.reps;
  options.consumers = a.consumers;
  options.drop_caches = !a.keep_caches;

  const Objective objective(doc.params, doc.workload, mode);
  const CostReport predicted = objective.report(loaded);
  const rawproc::RunResult run =
      rawproc::run_workload(format, a.raw, schema, doc.params, doc.workload, loaded, options);
  for (const std::string& w : run.warnings) err << "warning: " << w << "\n";

  std::vector<double> cumulative;
  double c = predicted.load_time;
  cumulative.push_back(c);
  for (const QueryCost& q : predicted.per_query) cumulative.push_back(c += q.seconds);

  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  write_text_file((dir / "measurements.csv").string(), rawproc::measurements_to_csv(run, mode));
  write_text_file((dir / "comparison.csv").string(), rawproc::comparison_csv(cumulative, run));
  write_text_file((dir / "predicted.json").string(), report_to_json(predicted));

  const std::vector<double> measured = rawproc::measured_cumulative(run);
  out << "query_index  predicted_cumulative_sec  measured_cumulative_sec\n";
  for (std::size_t i = 0; i < measured.size(); ++i) {
    char line[96];
    std::snprintf(line, sizeof(line), "%11zu  %24.6f  %23.6f\n", i, cumulative[i], measured[i]);
    out << line;
  }
  return kExitOk;
}

struct CalibrateArgs {
  std::string format, sample, out;
  std::size_t rows = 5000;
  std::uint64_t raw_size = 0, row_count = 0, bandwidth_bytes = 64ull << 20;
  double startup = 0;
  unsigned reps = 5;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
  rawproc::RawFormat format{rawproc::format_kind_from_string(a.format)};
  format.startup_sec_per_attr = a.startup;
  rawproc::CalibrationOptions options;
  options.sample_rows = a.rows;
  options.raw_size = a.raw_size;
  options.row_count = a.row_count;
  options.bandwidth_bytes = a.bandwidth_bytes;
  options.repetitions = a.reps;
  const rawproc::Calibration cal = rawproc::calibrate(format, a.sample, options);
  write_text_file(a.out, serialize_workload(cal.params, Workload{}));

  const CostParams& p = cal.params;
  char line[160];
  std::snprintf(line, sizeof(line), "mode %s  rows %llu  raw_size %.0f B  bandwidth %.4g B/s\n",
                std::string(to_string(p.tokenization_mode)).c_str(),
                static_cast<unsigned long long>(p.row_count), p.raw_size, p.bandwidth);
  out << line;
  out << "attribute                    t_tok_sec    t_parse_sec\n";
  for (const Attribute& at : p.attributes) {
    std::snprintf(line, sizeof(line), "%-24s  %12.4g  %12.4g\n", at.name.c_str(), at.t_tok, at.t_parse);
    out << line;
  }
  return kExitOk;
}

struct GenWorkloadArgs {
  std::string params, out;
  int attrs = 0, queries = 10, active = 0;
  double mean = 20, sd = 20;
  std::uint64_t seed = 1;
};

CostParams default_params(int n) {
  CostParams p;
  p.row_count = 1000000;
  p.raw_size = 1e10;
  p.bandwidth = 1e9;
  p.tokenization_mode = TokenizationMode::kPrefix;
  for (int j = 0; j < n; ++j) p.attributes.push_back({j, "a" + std::to_string(j), 8, 1e-9, 1e-7});
  return p;
}

int cmd_gen_workload(const GenWorkloadArgs& a, std::ostream& out) {
  CostParams params;
  if (!a.params.empty()) {
    params = read_workload_file(a.params).params;
  } else {
    if (a.attrs <= 0) fail(ErrorKind::kInvalidInput, "--attrs or --params is required");
    params = default_params(a.attrs);
  }
  const int n = static_cast<int>(params.num_attributes());
  const int active = a.active > 0 ? a.active : n;
  if (a.queries < 0) fail(ErrorKind::kInvalidInput, "--queries must be nonnegative");
  if (active > n) fail(ErrorKind::kInvalidInput, "--active exceeds the attribute count");
  if (!(a.mean > 0) || a.sd < 0) fail(ErrorKind::kInvalidInput, "width mean must be positive, sd nonnegative");
  const Workload w = gen_synthetic_workload(n, a.queries, a.mean, a.sd, active, a.seed);
  write_or_print(a.out, serialize_workload(params, w), out);
  return kExitOk;
}

struct GenRawArgs {
  std::string format, out;
  std::size_t attrs = 24;
  std::uint64_t rows = 0, target_bytes = 0, seed = 1;
};

int cmd_gen_raw(const GenRawArgs& a, std::ostream& out) {
  const rawproc::RawFormat format{rawproc::format_kind_from_string(a.format)};
  if (a.attrs == 0) fail(ErrorKind::kInvalidInput, "--attrs must be positive");
  const rawproc::RawSchema schema = rawproc::make_schema(format.kind, a.attrs, a.seed);
  std::uint64_t rows = a.rows;
  if (rows == 0) {
    if (a.target_bytes == 0) fail(ErrorKind::kInvalidInput, "--rows or --target-bytes is required");
    rows = rawproc::rows_for_bytes(format, schema, a.target_bytes, a.seed);
  }
  const rawproc::Manifest m = rawproc::gen_raw(format, schema, rows, a.seed, a.out);
  out << "wrote " << a.out << ": " << m.rows << " rows, " << m.bytes << " bytes, "
      << schema.size() << " attributes\n";
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kBudgetViolation: return kExitUsage;
    case ErrorKind::kInstanceTooLarge: return kExitTooLarge;
    case ErrorKind::kModeUnsupported: return kExitModeUnsupported;
    case ErrorKind::kIo:
    case ErrorKind::kCalibration: return kExitIo;
  }
  return kExitUsage;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial loading advisor for raw data files"};
  app.name("partload");
  app.require_subcommand(1);

  CalibrateArgs cal;
  auto* c = app.add_subcommand("calibrate", "Measure cost parameters on a raw file sample");
  c->add_option("--format", cal.format, "csv | json | binary")->required()
      ->check(CLI::IsMember({"csv", "json", "json-lines", "binary", "fixed-binary"}));
  c->add_option("--sample", cal.sample, "Raw file to sample")->required();
  c->add_option("--rows", cal.rows, "Sample rows (>= 1000)");
  c->add_option("--out", cal.out, "Output parameter document")->required();
  c->add_option("--raw-size", cal.raw_size, "Raw size in bytes (default: sample file size)");
  c->add_option("--row-count", cal.row_count, "Row count (default: manifest or extrapolated)");
  c->add_option("--bandwidth-bytes", cal.bandwidth_bytes, "Bytes read cold to time bandwidth");
  c->add_option("--startup-sec-per-attr", cal.startup, "Binary startup cost per attribute");
  c->add_option("--reps", cal.reps, "Timing repetitions");

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "Choose attributes to load");
  o->add_option("--workload", opt.workload, "Workload document")->required();
  o->add_option("--params", opt.params, "Parameter document overriding the workload's params");
  opt.budget.add(o);
  o->add_option("--algo", opt.algo, "Algorithm")->check(CLI::IsMember(kAlgorithms));
  o->add_option("--mode", opt.mode, "serial | pipelined")->check(CLI::IsMember({"serial", "pipelined"}));
  o->add_option("--delta", opt.delta, "Heuristic sweep step in bytes (default budget/10)");
  o->add_option("--time-cap", opt.time_cap, "chu time cap in seconds");
  o->add_option("--threshold", opt.threshold, "agrawal CG-Cost threshold in [0,1]");
  o->add_option("--threads", opt.threads, "Worker threads for exact (0 = all cores)");
  o->add_option("--out", opt.out, "Output plan document");

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Evaluate a load plan");
  e->add_option("--workload", ev.workload, "Workload document")->required();
  e->add_option("--params", ev.params, "Parameter document overriding the workload's params");
  auto* plan_opt = e->add_option("--plan", ev.plan, "Plan document");
  auto* load_opt = e->add_option("--load", ev.load, "Comma-separated attribute names");
  plan_opt->excludes(load_opt);
  ev.budget.add(e);
  e->add_option("--mode", ev.mode, "serial | pipelined (default: the plan's mode)")
      ->check(CLI::IsMember({"serial", "pipelined"}));
  e->add_option("--out", ev.out, "CostReport JSON output");
  e->add_option("--csv", ev.csv, "Cumulative predicted time CSV output");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Execute a plan on a raw file and compare with the model");
  s->add_option("--format", sim.format, "csv | json | binary")->required()
      ->check(CLI::IsMember({"csv", "json", "json-lines", "binary", "fixed-binary"}));
  s->add_option("--raw", sim.raw, "Raw data file")->required();
  s->add_option("--workload", sim.workload, "Workload document")->required();
  s->add_option("--params", sim.params, "Calibrated parameter document");
  s->add_option("--plan", sim.plan, "Plan document")->required();
  s->add_option("--mode", sim.mode, "serial | pipelined")->check(CLI::IsMember({"serial", "pipelined"}));
  s->add_option("--dataset-dir", sim.dataset_dir, "Directory for loaded column files");
  s->add_option("--reps", sim.reps, "Repetitions to average")->check(CLI::PositiveNumber);
  s->add_option("--consumers", sim.consumers, "Pipelined extraction threads (0 = all cores)");
  s->add_flag("--keep-caches", sim.keep_caches, "Do not drop page caches between queries");
  s->add_option("--out-dir", sim.out_dir, "Output directory")->required();

  ExportArgs ex;
  auto* x = app.add_subcommand("export-lp", "Write the MIP in LP format");
  x->add_option("--workload", ex.workload, "Workload document")->required();
  x->add_option("--params", ex.params, "Parameter document overriding the workload's params");
  ex.budget.add(x);
  x->add_option("--mode", ex.mode, "serial | pipelined")->check(CLI::IsMember({"serial", "pipelined"}));
  x->add_option("--out", ex.out, "Output LP file (default stdout)");

  auto* g = app.add_subcommand("gen", "Generate synthetic workloads or raw files");
  g->require_subcommand(1);
  GenWorkloadArgs gw;
  auto* gwc = g->add_subcommand("workload", "Synthetic workload document");
  gwc->add_option("--attrs", gw.attrs, "Attribute count (with default parameters)");
  gwc->add_option("--params", gw.params, "Take parameters from this document");
  gwc->add_option("--queries", gw.queries, "Query count");
  gwc->add_option("--mean", gw.mean, "Mean query width");
  gwc->add_option("--sd", gw.sd, "Query width standard deviation");
  gwc->add_option("--active", gw.active, "Active attribute subset size (default all)");
  gwc->add_option("--seed", gw.seed, "Random seed");
  gwc->add_option("--out", gw.out, "Output document (default stdout)");
  GenRawArgs gr;
  auto* grc = g->add_subcommand("raw", "Synthetic raw data file");
  grc->add_option("--format", gr.format, "csv | json | binary")->required()
      ->check(CLI::IsMember({"csv", "json", "json-lines", "binary", "fixed-binary"}));
  grc->add_option("--attrs", gr.attrs, "Attribute count");
  grc->add_option("--rows", gr.rows, "Row count");
  grc->add_option("--target-bytes", gr.target_bytes, "Approximate file size instead of --rows");
  grc->add_option("--seed", gr.seed, "Random seed");
  grc->add_option("--out", gr.out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) return cmd_calibrate(cal, out);
    if (o->parsed()) return cmd_optimize(opt, out);
    if (e->parsed()) {
      if (ev.plan.empty() && load_opt->count() == 0) {
        fail(ErrorKind::kInvalidInput, "evaluate needs --plan or --load");
      }
      return cmd_evaluate(ev, out);
    }
    if (s->parsed()) return cmd_simulate(sim, out, err);
    if (x->parsed()) return cmd_export_lp(ex, out);
    if (gwc->parsed()) return cmd_gen_workload(gw, out);
    if (grc->parsed()) return cmd_gen_raw(gr, out);
  } catch (const Error& ex_) {
    err << "error: " << ex_.what() << "\n";
    return exit_code_for(ex_.kind());
  } catch (const std::filesystem::filesystem_error& fe) {
    err << "error: " << fe.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace partload::cli
