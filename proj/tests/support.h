// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Test-only helpers: tiny fixed instances, seeded random generators, and
// independent brute-force references the solvers are checked against.

#ifndef FAIRAGG_TESTS_SUPPORT_H_
#define FAIRAGG_TESTS_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "fairagg/core.h"
#include "fairagg/flow.h"
#include "fairagg/hardness.h"
#include "fairagg/metrics.h"
#include "fairagg/synthetic.h"

namespace fairagg {
namespace testing {

// Two voters over four candidates in two groups, k = 2, every group owning
// exactly one of the top two slots. The running example across the suites.
inline Instance PairedVotersInstance() {
  Instance inst;
  inst.rankings.push_back(Ranking({1, 2, 3, 4}));
  inst.rankings.push_back(Ranking({2, 1, 4, 3}));
  inst.groups = GroupAssignment{4, 2, {0, 0, 1, 1}};
  inst.fairness.k = 2;
  inst.fairness.alpha = {Rational(1, 2), Rational(1, 2)};
  inst.fairness.beta = {Rational(1, 2), Rational(1, 2)};
  return inst;
}

// Three voters over six candidates; the classic completion illustration
// where ids {0, 1, 5} fill the top-3 window.
inline std::vector<Ranking> ThreeVoterRankings() {
  return {Ranking::FromOrder({0, 1, 2, 3, 4, 5}),
          Ranking::FromOrder({2, 5, 4, 0, 1, 3}),
          Ranking::FromOrder({5, 0, 1, 4, 3, 2})};
}

enum class BoundsMode { kProportional, kRandomFeasible, kVacuous };

inline Instance RandomInstance(Rng& rng, int min_d, int max_d, int max_n,
                               int max_g, BoundsMode mode) {
  const int d = min_d + rng.Below(max_d - min_d + 1);
  const int n = 1 + rng.Below(max_n);
  const int g = 1 + rng.Below(std::min(max_g, d));

  Instance inst;
  inst.groups.d = d;
  inst.groups.g = g;
  inst.groups.group_of.resize(d);
  for (int c = 0; c < d; ++c) {
    inst.groups.group_of[c] = c < g ? c : rng.Below(g);
  }
  rng.Shuffle(inst.groups.group_of);

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < n; ++i) {
    rng.Shuffle(order);
    inst.rankings.push_back(Ranking::FromOrder(order));
  }

  inst.fairness.k = 1 + rng.Below(d);
  if (mode == BoundsMode::kProportional) {
    const std::vector<int> sizes = inst.groups.GroupSizes();
    for (int a = 0; a < g; ++a) {
      inst.fairness.alpha.push_back(Rational(sizes[a], d));
      inst.fairness.beta.push_back(Rational(sizes[a], d));
    }
  } else if (mode == BoundsMode::kVacuous) {
    inst.fairness.alpha.assign(g, Rational(0, 1));
    inst.fairness.beta.assign(g, Rational(1, 1));
  } else {
    for (int attempt = 0; attempt < 50; ++attempt) {
      inst.fairness.alpha.clear();
      inst.fairness.beta.clear();
      for (int a = 0; a < g; ++a) {
        const int q = 1 + rng.Below(8);
        const int p = rng.Below(q + 1);
        const int r = p + rng.Below(q + 1 - p);
        inst.fairness.alpha.push_back(Rational(p, q));
        inst.fairness.beta.push_back(Rational(r, q));
      }
      try {
        DeriveTopKBounds(inst.fairness, inst.groups);
        return inst;
      } catch (const InfeasibleBounds&) {
      }
    }
    inst.fairness.alpha.assign(g, Rational(0, 1));
    inst.fairness.beta.assign(g, Rational(1, 1));
  }
  return inst;
}

// The shared randomized corpus for approximation measurements: several
// voters, proportional per-group fractions, random window size.
inline std::vector<Instance> SyntheticSuite(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<Instance> suite;
  for (int i = 0; i < count; ++i) {
    Instance inst = RandomInstance(rng, 4, 7, 4, 3, BoundsMode::kProportional);
    while (inst.n() < 2) {
      inst = RandomInstance(rng, 4, 7, 4, 3, BoundsMode::kProportional);
    }
    suite.push_back(std::move(inst));
  }
  return suite;
}

inline void ForEachRanking(int d, const std::function<void(const Ranking&)>& fn) {
  std::vector<int> rank_of(d);
  std::iota(rank_of.begin(), rank_of.end(), 1);
  do {
    fn(Ranking(rank_of));
  } while (std::next_permutation(rank_of.begin(), rank_of.end()));
}

inline bool WindowCountsFair(const Ranking& sigma, int k,
                             const CountBounds& bounds,
                             const GroupAssignment& groups) {
  std::vector<std::int64_t> counts(groups.g, 0);
  for (int c = 0; c < groups.d; ++c) {
    if (sigma.RankOf(c) <= k) ++counts[groups.group_of[c]];
  }
  for (int a = 0; a < groups.g; ++a) {
    if (counts[a] < bounds.lower[a] || counts[a] > bounds.upper[a]) {
      return false;
    }
  }
  return true;
}

// Minimum footrule distance from pi to any fair ranking, by enumeration.
inline std::optional<std::int64_t> BruteClosestFairDistance(
    const Ranking& pi, const CountBounds& bounds,
    const GroupAssignment& groups) {
  std::optional<std::int64_t> best;
  ForEachRanking(groups.d, [&](const Ranking& sigma) {
    if (!WindowCountsFair(sigma, bounds.k, bounds, groups)) return;
    const std::int64_t dist = Footrule(pi, sigma);
    if (!best.has_value() || dist < *best) best = dist;
  });
  return best;
}

// Minimum total directional placement cost of any fair window placement,
// enumerated directly over ordered candidate selections.
inline std::optional<std::int64_t> BruteMinWindowCost(
    std::span<const Ranking> rankings, const CountBounds& bounds,
    const GroupAssignment& groups, Direction direction) {
  const int d = groups.d;
  const int k = bounds.k;
  const int first_pos = bounds.side == Side::kTop ? 1 : d - k + 1;
  std::optional<std::int64_t> best;
  std::vector<int> chosen;
  std::vector<char> used(d, 0);
  const auto place_cost = [&](int c, int pos) {
    std::int64_t total = 0;
    for (const Ranking& pi : rankings) {
      const int r = pi.RankOf(c);
      total += direction == Direction::kLeftward ? 2 * std::max(0, r - pos)
                                                 : 2 * std::max(0, pos - r);
    }
    return total;
  };
  const auto dfs = [&](auto&& self, int idx, std::int64_t cost) -> void {
    if (idx == k) {
      std::vector<std::int64_t> counts(groups.g, 0);
      for (int c : chosen) ++counts[groups.group_of[c]];
      for (int a = 0; a < groups.g; ++a) {
        if (counts[a] < bounds.lower[a] || counts[a] > bounds.upper[a]) return;
      }
      if (!best.has_value() || cost < *best) best = cost;
      return;
    }
    for (int c = 0; c < d; ++c) {
      if (used[c]) continue;
      used[c] = 1;
      chosen.push_back(c);
      self(self, idx + 1, cost + place_cost(c, first_pos + idx));
      chosen.pop_back();
      used[c] = 0;
    }
  };
  dfs(dfs, 0, 0);
  return best;
}

// Exhaustive minimum-cost flow for tiny networks: tries every integral flow
// vector within the arc bounds.
inline std::optional<std::int64_t> BruteMinCostFlow(const FlowNetwork& net) {
  const size_t m = net.arcs.size();
  std::vector<std::int64_t> flow(m, 0);
  std::optional<std::int64_t> best;
  const auto feasible = [&]() {
    std::vector<std::int64_t> net_out(net.num_nodes, 0);
    for (size_t i = 0; i < m; ++i) {
      net_out[net.arcs[i].from] += flow[i];
      net_out[net.arcs[i].to] -= flow[i];
    }
    for (int v = 0; v < net.num_nodes; ++v) {
      if (v == net.source) {
        if (net_out[v] != net.required_flow) return false;
      } else if (v == net.sink) {
        if (net_out[v] != -net.required_flow) return false;
      } else if (net_out[v] != 0) {
        return false;
      }
    }
    return true;
  };
  const auto dfs = [&](auto&& self, size_t arc) -> void {
    if (arc == m) {
      if (!feasible()) return;
      std::int64_t cost = 0;
      for (size_t i = 0; i < m; ++i) cost += flow[i] * net.arcs[i].cost;
      if (!best.has_value() || cost < *best) best = cost;
      return;
    }
    for (std::int64_t f = net.arcs[arc].lower; f <= net.arcs[arc].upper; ++f) {
      flow[arc] = f;
      self(self, arc + 1);
    }
  };
  dfs(dfs, 0);
  return best;
}

// Lexicographically smallest minimum-cost assignment by enumeration.
inline std::pair<std::vector<int>, std::int64_t> BruteAssignment(
    const std::vector<std::vector<std::int64_t>>& cost) {
  const int m = static_cast<int>(cost.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm;
  std::int64_t best_cost = 0;
  bool have = false;
  do {
    std::int64_t total = 0;
    for (int i = 0; i < m; ++i) total += cost[i][perm[i]];
    if (!have || total < best_cost) {
      have = true;
      best_cost = total;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_perm, best_cost};
}

inline bool TruthTableSat(const CnfFormula& formula) {
  const int n = formula.num_vars;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool all = true;
    for (const auto& clause : formula.clauses) {
      bool satisfied = false;
      for (int literal : clause) {
        const int var = std::abs(literal);
        const bool value = (mask >> (var - 1)) & 1u;
        if ((literal > 0) == value) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// Random (3,3) formula: 1-3 distinct variables per clause, occurrence budget
// of 3 per variable.
inline CnfFormula Random33Formula(Rng& rng, int n) {
  CnfFormula formula;
  formula.num_vars = n;
  std::vector<int> budget(n + 1, 3);
  const int m = 1 + rng.Below(3 * n - 1 < 5 ? 3 * n - 1 : 5);
  for (int c = 0; c < m; ++c) {
    std::vector<int> available;
    for (int v = 1; v <= n; ++v) {
      if (budget[v] > 0) available.push_back(v);
    }
    if (available.empty()) break;
    const int want = 1 + rng.Below(std::min(3, static_cast<int>(available.size())));
    rng.Shuffle(available);
    std::vector<int> clause;
    for (int i = 0; i < want; ++i) {
      const int var = available[i];
      --budget[var];
      clause.push_back(rng.Below(2) == 0 ? var : -var);
    }
    std::sort(clause.begin(), clause.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b); });
    formula.clauses.push_back(clause);
  }
  if (formula.clauses.empty()) formula.clauses.push_back({1});
  return formula;
}

}  // namespace testing
}  // namespace fairagg

#endif  // FAIRAGG_TESTS_SUPPORT_H_
