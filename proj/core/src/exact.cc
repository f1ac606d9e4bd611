#include "partload/exact.h"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "partload/errors.h"

namespace partload {

namespace {

struct Best {
  bool have = false;
  double value = 0;
  AttributeSet set;
  std::uint64_t evaluated = 0;

  void offer(const AttributeSet& s, double v) {
    ++evaluated;
    if (!have || v < value || (v == value && lex_less(s, set))) {
      have = true;
      value = v;
      set = s;
    }
  }
  void merge(const Best& o) {
    evaluated += o.evaluated;
    if (!o.have) return;
    if (!have || o.value < value || (o.value == value && lex_less(o.set, set))) {
      have = true;
      value = o.value;
      set = o.set;
    }
  }
};

class Search {
 public:
  Search(const Objective& objective, double budget)
      : objective_(objective), budget_(budget) {
    const AttributeSet refs =
        referenced_attributes(objective.workload(), objective.num_attributes());
    candidates_ = refs.indices();
    for (int a : candidates_) bytes_.push_back(objective.params().column_bytes(a));
  }

  std::size_t size() const { return candidates_.size(); }

  // Task k < size(): the singleton {c_k}. Task pairs follow: every subset
  // whose two smallest candidates are (c_a, c_b), explored depth-first.
  std::size_t task_count() const { return size() + size() * (size() - 1) / 2; }

  void run_task(std::size_t task, Best& best) const {
    AttributeSet set(objective_.num_attributes());
    if (task < size()) {
      if (!within_budget(bytes_[task], budget_)) return;
      set.insert(candidates_[task]);
      best.offer(set, objective_.value(set));
      return;
    }
    std::size_t t = task - size();
    std::size_t a = 0;
    while (t >= size() - 1 - a) {
      t -= size() - 1 - a;
      ++a;
    }
    const std::size_t b = a + 1 + t;
    const double used = bytes_[a] + bytes_[b];
    if (!within_budget(used, budget_)) return;
    set.insert(candidates_[a]);
    set.insert(candidates_[b]);
    descend(set, b + 1, used, best);
  }

  void evaluate_empty(Best& best) const {
    const AttributeSet empty(objective_.num_attributes());
    best.offer(empty, objective_.value(empty));
  }

 private:
  void descend(AttributeSet& set, std::size_t next, double used, Best& best) const {
    best.offer(set, objective_.value(set));
    for (std::size_t k = next; k < size(); ++k) {
      const double u = used + bytes_[k];
      if (!within_budget(u, budget_)) continue;
      set.insert(candidates_[k]);
      descend(set, k + 1, u, best);
      set.erase(candidates_[k]);
    }
  }

  const Objective& objective_;
  double budget_;
  std::vector<int> candidates_;
  std::vector<double> bytes_;
};

}  // namespace

ExactResult brute_force(const Objective& objective, double budget, unsigned threads) {
  const Search search(objective, budget);
  if (search.size() > kMaxExactCandidates) {
    fail(ErrorKind::kInstanceTooLarge,
         "exact search supports at most " + std::to_string(kMaxExactCandidates) +
             " referenced attributes, instance has " + std::to_string(search.size()));
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t tasks = search.task_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));

  Best best;
  search.evaluate_empty(best);
  std::vector<Best> partial(threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned w) {
    for (std::size_t t = next++; t < tasks; t = next++) search.run_task(t, partial[w]);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const Best& p : partial) best.merge(p);

  ExactResult result;
  result.loaded = best.set;
  result.report = objective.report(best.set);
  result.evaluated = best.evaluated;
  return result;
}

ExactResult brute_force(const CostParams& params, const Workload& workload, double budget,
                        EvalMode mode, unsigned threads) {
  const Objective objective(params, workload, mode);
  return brute_force(objective, budget, threads);
}

}  // namespace partload
