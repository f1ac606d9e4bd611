#include <gtest/gtest.h>

#include <random>

#include "fixtures.h"
#include "oracles.h"
#include "partload/errors.h"
#include "partload/exact.h"

namespace partload {
namespace {

using testing_support::Instance;
using testing_support::load_fixture;
using testing_support::names_to_set;
using testing_support::random_instance;
using testing_support::regime_of;

TEST(Exact, Table1Optimum) {
  const WorkloadDocument doc = load_fixture("table1.json");
  const ExactResult r = brute_force(doc.params, doc.workload,
                                    testing_support::table1_budget(doc.params, 3), EvalMode::kSerial);
  EXPECT_EQ(r.loaded, names_to_set(doc.params, {"A1", "A2", "A4"}));
}

TEST(Exact, ZeroBudgetIsAllRaw) {
  const WorkloadDocument doc = load_fixture("table1.json");
  const Objective obj(doc.params, doc.workload, EvalMode::kSerial);
  const ExactResult r = brute_force(obj, 0);
  EXPECT_TRUE(r.loaded.empty());
  EXPECT_EQ(r.report.objective, obj.value(AttributeSet(8)));
  EXPECT_EQ(r.evaluated, 1u);
}

TEST(Exact, MatchesIndependentEnumeration) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mode = static_cast<TokenizationMode>(trial % 3);
    const Instance inst = random_instance(rng, 6, 4, regime_of(static_cast<std::uint64_t>(trial)), mode);
    const double budget = testing_support::total_bytes(inst.params) * 0.5;
    const ExactResult r = brute_force(inst.params, inst.workload, budget, EvalMode::kSerial);
    const auto best = oracle::best_subset(inst.params, budget, [&](std::uint64_t mask) {
      return oracle::serial_objective(inst.params, inst.workload, oracle::mask_to_save(6, mask));
    });
    ASSERT_TRUE(oracle::near(r.report.objective, best.value, 1e-9)) << "trial " << trial;
  }
}

TEST(Exact, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(rng, 12, 8, regime_of(static_cast<std::uint64_t>(trial)),
                                          TokenizationMode::kPrefix);
    const Objective obj(inst.params, inst.workload, EvalMode::kSerial);
    const double budget = testing_support::total_bytes(inst.params) * 0.4;
    const ExactResult one = brute_force(obj, budget, 1);
    const ExactResult four = brute_force(obj, budget, 4);
    ASSERT_EQ(one.loaded, four.loaded);
    ASSERT_EQ(one.evaluated, four.evaluated);
  }
}

TEST(Exact, TiesGoToLexicographicallySmallest) {
  CostParams p;
  p.row_count = 1000;
  p.bandwidth = 1e9;
  p.raw_size = 1e10;
  for (int j = 0; j < 4; ++j) p.attributes.push_back({j, "a" + std::to_string(j), 8, 1e-9, 1e-8});
  Workload w;
  w.queries.push_back({"x", {0, 1}, 5.0});
  w.queries.push_back({"y", {2, 3}, 5.0});
  // Both pairs are symmetric apart from tokenize prefix lengths, which are
  // zero here: make tokenization free so {0,1} and {2,3} tie exactly.
  for (Attribute& a : p.attributes) a.t_tok = 0;
  const ExactResult r = brute_force(p, w, 2 * p.column_bytes(0), EvalMode::kSerial);
  EXPECT_EQ(r.loaded, AttributeSet(4, {0, 1}));
}

TEST(Exact, TooManyCandidates) {
  std::mt19937_64 rng(5);
  Instance inst = random_instance(rng, 30, 1, testing_support::Regime::kBalanced,
                                  TokenizationMode::kPrefix);
  inst.workload.queries[0].attrs.clear();
  for (int j = 0; j < 25; ++j) inst.workload.queries[0].attrs.push_back(j);
  try {
    brute_force(inst.params, inst.workload, 1e30, EvalMode::kSerial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInstanceTooLarge);
  }
}

TEST(Exact, PipelinedMatchesEnumeration) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mode = trial % 2 ? TokenizationMode::kAtomic : TokenizationMode::kNone;
    const Instance inst = random_instance(rng, 6, 4, regime_of(static_cast<std::uint64_t>(trial)), mode);
    const double budget = testing_support::total_bytes(inst.params) * 0.5;
    const ExactResult r = brute_force(inst.params, inst.workload, budget, EvalMode::kPipelined);
    const auto best = oracle::best_subset(inst.params, budget, [&](std::uint64_t mask) {
      const auto save = oracle::mask_to_save(6, mask);
      double v = oracle::load_time(inst.params, save);
      for (const Query& q : inst.workload.queries) {
        v += q.weight * oracle::serial_optimal_pipelined_time(inst.params, save, q.attrs);
      }
      return v;
    });
    ASSERT_TRUE(oracle::near(r.report.objective, best.value, 1e-9)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace partload
