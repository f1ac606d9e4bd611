#include "partload/baselines.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <string>

#include "partload/errors.h"

namespace partload {

std::vector<std::vector<double>> affinity_matrix(const Workload& workload, std::size_t n) {
  std::vector<std::vector<double>> aff(n, std::vector<double>(n, 0.0));
  for (const Query& q : workload.queries) {
    for (int a : q.attrs) {
      for (int b : q.attrs) {
        aff[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += q.weight;
      }
    }
  }
  return aff;
}

std::vector<int> navathe_order(const Workload& workload, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {0};
  const auto aff = affinity_matrix(workload, n);
  std::vector<std::vector<double>> bond(n, std::vector<double>(n, 0.0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      double s = 0;
      for (std::size_t z = 0; z < n; ++z) s += aff[z][x] * aff[z][y];
      bond[x][y] = bond[y][x] = s;
    }
  }

  std::size_t sa = 0, sb = 1;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (aff[a][b] > aff[sa][sb]) {
        sa = a;
        sb = b;
      }
    }
  }
  std::vector<int> order = {static_cast<int>(sa), static_cast<int>(sb)};
  std::vector<bool> placed(n, false);
  placed[sa] = placed[sb] = true;

  auto b_of = [&](int x, int y) {
    return (x < 0 || y < 0) ? 0.0 : bond[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  };
  for (std::size_t step = 2; step < n; ++step) {
    int best_attr = -1;
    std::size_t best_pos = 0;
    double best = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (placed[x]) continue;
      const int xi = static_cast<int>(x);
      for (std::size_t pos = 0; pos <= order.size(); ++pos) {
        const int l = pos == 0 ? -1 : order[pos - 1];
        const int r = pos == order.size() ? -1 : order[pos];
        const double c = 2 * b_of(l, xi) + 2 * b_of(xi, r) - 2 * b_of(l, r);
        if (best_attr < 0 || c > best) {
          best_attr = xi;
          best_pos = pos;
          best = c;
        }
      }
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(best_pos), best_attr);
    placed[static_cast<std::size_t>(best_attr)] = true;
  }
  return order;
}

BaselineResult navathe_split(const Objective& objective, double budget,
                             const std::vector<int>& order) {
  const std::size_t n = objective.num_attributes();
  BaselineResult result;
  bool have = false;
  double best = 0;
  auto consider = [&](const AttributeSet& s) {
    if (!within_budget(objective.bytes(s), budget)) return;
    const double v = objective.value(s);
    ++result.evaluated;
    if (!have || v < best) {
      have = true;
      best = v;
      result.loaded = s;
    }
  };
  for (std::size_t k = 0; k <= order.size(); ++k) {
    AttributeSet prefix(n), suffix(n);
    for (std::size_t i = 0; i < k; ++i) prefix.insert(order[i]);
    for (std::size_t i = k; i < order.size(); ++i) suffix.insert(order[i]);
    consider(prefix);
    consider(suffix);
  }
  result.report = objective.report(result.loaded);
  return result;
}

BaselineResult navathe(const Objective& objective, double budget) {
  return navathe_split(objective, budget,
                       navathe_order(objective.workload(), objective.num_attributes()));
}

BaselineResult chu(const Objective& objective, double budget, double time_cap_sec) {
  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(time_cap_sec));
  const std::size_t n = objective.num_attributes();
  const auto& queries = objective.workload().queries;

  // Queries that fit on their own, as attribute sets.
  std::vector<AttributeSet> supports;
  for (const Query& q : queries) {
    AttributeSet s(n, q.attrs);
    if (within_budget(objective.bytes(s), budget)) supports.push_back(std::move(s));
  }

  BaselineResult result;
  result.loaded = AttributeSet(n);
  double best = objective.value(result.loaded);
  result.evaluated = 1;

  bool any_at_level = true;
  for (std::size_t k = 1; k <= supports.size() && any_at_level && !result.capped; ++k) {
    any_at_level = false;
    // Depth-first over k-combinations; unions only grow, so a partial union
    // over budget prunes its subtree.
    std::vector<AttributeSet> unions(k + 1, AttributeSet(n));
    auto visit = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
      if (result.capped) return;
      if (depth == k) {
        any_at_level = true;
        const double v = objective.value(unions[depth]);
        ++result.evaluated;
        if (v < best || (v == best && lex_less(unions[depth], result.loaded))) {
          best = v;
          result.loaded = unions[depth];
        }
        if ((result.evaluated & 255) == 0 && Clock::now() >= deadline) result.capped = true;
        return;
      }
      for (std::size_t q = from; q + (k - depth) <= supports.size(); ++q) {
        unions[depth + 1] = unions[depth] | supports[q];
        if (!within_budget(objective.bytes(unions[depth + 1]), budget)) continue;
        self(self, depth + 1, q + 1);
        if (result.capped) return;
      }
    };
    visit(visit, 0, 0);
  }
  result.report = objective.report(result.loaded);
  return result;
}

std::vector<ColumnGroup> column_groups(const Workload& workload, std::size_t n, double threshold,
                                       std::size_t group_cap) {
  if (!(threshold >= 0 && threshold <= 1)) {
    fail(ErrorKind::kInvalidInput, "CG-Cost threshold must lie in [0, 1]");
  }
  double total = 0;
  for (const Query& q : workload.queries) total += q.weight;
  // Zero total weight falls back to plain query counts.
  const bool counts = total <= 0;
  if (counts) total = static_cast<double>(workload.queries.size());
  auto weight = [&](const Query& q) { return counts ? 1.0 : q.weight; };

  std::vector<std::vector<double>> pair(n, std::vector<double>(n, 0.0));
  for (const Query& q : workload.queries) {
    for (int a : q.attrs)
      for (int b : q.attrs) pair[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += weight(q);
  }
  auto frac = [&](int a, int b) {
    return total > 0 ? pair[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] / total : 0.0;
  };
  auto confidence = [&](const std::vector<int>& g) {
    if (total <= 0) return 0.0;
    double s = 0;
    for (const Query& q : workload.queries) {
      if (std::includes(q.attrs.begin(), q.attrs.end(), g.begin(), g.end())) s += weight(q);
    }
    return s / total;
  };
  auto supported = [&](const std::vector<int>& g) {
    for (const Query& q : workload.queries) {
      if (std::includes(q.attrs.begin(), q.attrs.end(), g.begin(), g.end())) return true;
    }
    return false;
  };

  std::vector<ColumnGroup> all;
  auto keep = [&](ColumnGroup g) {
    if (all.size() >= group_cap) {
      fail(ErrorKind::kInstanceTooLarge,
           "more than " + std::to_string(group_cap) + " column groups; raise the CG-Cost threshold");
    }
    all.push_back(std::move(g));
  };

  std::vector<ColumnGroup> level;
  for (std::size_t a = 0; a < n; ++a) {
    const int ai = static_cast<int>(a);
    if (pair[a][a] <= 0 && !supported({ai})) continue;
    const double cg = frac(ai, ai);
    if (cg >= threshold) level.push_back({{ai}, cg, 0});
  }
  for (auto& g : level) keep(g);

  while (!level.empty()) {
    std::set<std::vector<int>> present;
    for (const auto& g : level) present.insert(g.attrs);
    std::vector<ColumnGroup> next;
    for (std::size_t x = 0; x < level.size(); ++x) {
      for (std::size_t y = x + 1; y < level.size(); ++y) {
        const auto& gx = level[x].attrs;
        const auto& gy = level[y].attrs;
        if (!std::equal(gx.begin(), gx.end() - 1, gy.begin())) break;
        std::vector<int> cand = gx;
        cand.push_back(gy.back());
        const int a = gx.back(), b = gy.back();
        double cg = frac(a, b);
        if (gx.size() > 1) cg = std::min({cg, level[x].cg_cost, level[y].cg_cost});
        if (cg < threshold) continue;
        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && closed; ++drop) {
          std::vector<int> sub;
          for (std::size_t i = 0; i < cand.size(); ++i)
            if (i != drop) sub.push_back(cand[i]);
          closed = present.count(sub) > 0;
        }
        if (!closed || !supported(cand)) continue;
        next.push_back({std::move(cand), cg, 0});
        if (all.size() + next.size() > group_cap) {
          fail(ErrorKind::kInstanceTooLarge,
               "more than " + std::to_string(group_cap) +
                   " column groups; raise the CG-Cost threshold");
        }
      }
    }
    for (auto& g : next) keep(g);
    level = std::move(next);
  }

  for (auto& g : all) g.vp_confidence = confidence(g.attrs);
  std::stable_sort(all.begin(), all.end(), [](const ColumnGroup& a, const ColumnGroup& b) {
    if (a.vp_confidence != b.vp_confidence) return a.vp_confidence > b.vp_confidence;
    if (a.attrs.size() != b.attrs.size()) return a.attrs.size() > b.attrs.size();
    return a.attrs < b.attrs;
  });
  return all;
}

BaselineResult agrawal(const Objective& objective, double budget, double threshold,
                       std::size_t group_cap) {
  const std::size_t n = objective.num_attributes();
  const auto groups = column_groups(objective.workload(), n, threshold, group_cap);

  BaselineResult result;
  AttributeSet loaded(n);
  double used = 0;
  AttributeSet best = loaded;
  double best_value = objective.value(loaded);
  result.evaluated = 1;
  for (const ColumnGroup& g : groups) {
    for (;;) {
      int pick = -1;
      double pick_value = 0;
      for (int a : g.attrs) {
        if (loaded.contains(a)) continue;
        if (!within_budget(used + objective.params().column_bytes(a), budget)) continue;
        loaded.insert(a);
        const double v = objective.value(loaded);
        loaded.erase(a);
        ++result.evaluated;
        if (pick < 0 || v < pick_value) {
          pick = a;
          pick_value = v;
        }
      }
      if (pick < 0) break;
      loaded.insert(pick);
      used = objective.bytes(loaded);
      if (pick_value < best_value) {
        best = loaded;
        best_value = pick_value;
      }
    }
  }
  loaded = best;
  result.loaded = loaded;
  result.report = objective.report(loaded);
  return result;
}

}  // namespace partload
