#include "partload/plan_io.h"

#include <charconv>
#include <cmath>

#include "json.hpp"
#include "partload/errors.h"

namespace partload {

PlanDocument make_plan_document(const CostParams& params, std::string algorithm, EvalMode mode,
                                double budget, const AttributeSet& loaded, double objective) {
  PlanDocument doc;
  doc.algorithm = std::move(algorithm);
  doc.mode = mode;
  doc.budget = budget;
  loaded.for_each([&](int j) { doc.loaded.push_back(params.attributes[static_cast<std::size_t>(j)].name); });
  doc.used_bytes = bytes_of(params, loaded);
  doc.objective = objective;
  return doc;
}

namespace {

nlohmann::json byte_count(double bytes) {
  if (bytes >= 0 && bytes < 9.2e18) return static_cast<std::int64_t>(std::llround(bytes));
  return bytes;
}

}  // namespace

std::string serialize_plan(const PlanDocument& plan) {
  nlohmann::json sweep = nlohmann::json::array();
  for (const SweepPoint& p : plan.sweep) {
    sweep.push_back({{"coverage_budget", byte_count(p.coverage_budget)}, {"objective_sec", p.objective}});
  }
  nlohmann::json doc = {{"algorithm", plan.algorithm},
                        {"mode", std::string(to_string(plan.mode))},
                        {"budget_bytes", byte_count(plan.budget)},
                        {"loaded", plan.loaded},
                        {"used_bytes", byte_count(plan.used_bytes)},
                        {"objective_sec", plan.objective},
                        {"sweep", std::move(sweep)}};
  if (plan.capped) doc["capped"] = true;
  return doc.dump(2) + "\n";
}

PlanDocument parse_plan(std::string_view document) {
  PlanDocument plan;
  try {
    const auto doc = nlohmann::json::parse(document);
    plan.algorithm = doc.value("algorithm", std::string("manual"));
    plan.mode = eval_mode_from_string(doc.value("mode", std::string("serial")));
    plan.budget = doc.value("budget_bytes", 0.0);
    plan.loaded = doc.at("loaded").get<std::vector<std::string>>();
    plan.used_bytes = doc.value("used_bytes", 0.0);
    plan.objective = doc.value("objective_sec", 0.0);
    plan.capped = doc.value("capped", false);
    if (doc.contains("sweep")) {
      for (const auto& p : doc.at("sweep")) {
        plan.sweep.push_back({p.at("coverage_budget").get<double>(), p.at("objective_sec").get<double>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kInvalidInput, "malformed plan document: " + std::string(e.what()));
  }
  return plan;
}

AttributeSet plan_attributes(const PlanDocument& plan, const CostParams& params) {
  AttributeSet set(params.num_attributes());
  for (const std::string& name : plan.loaded) {
    const int j = params.find(name);
    if (j < 0) fail(ErrorKind::kInvalidInput, "unknown attribute '" + name + "' in plan");
    set.insert(j);
  }
  return set;
}

std::string format_seconds(double seconds) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), seconds);
  return std::string(buf, r.ptr);
}

}  // namespace partload
