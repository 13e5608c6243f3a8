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

#include "fairagg/solvers.h"

#include <algorithm>
#include <chrono>
#include <limits>

#include "fairagg/flow.h"

namespace fairagg {

namespace {

using Clock = std::chrono::steady_clock;

double ElapsedMs(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

int CommonSize(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw DimensionMismatch("no input rankings");
  const int d = rankings[0].d();
  for (const Ranking& pi : rankings) {
    if (pi.d() != d) throw DimensionMismatch("rankings have different sizes");
  }
  return d;
}

}  // namespace

WeightMatrix BuildWeights(std::span<const Ranking> rankings, int k,
                          WeightKind kind) {
  const int d = CommonSize(rankings);
  if (k < 0 || k > d) throw DimensionMismatch("window size out of range");
  int col_lo = 1, col_hi = k;
  if (kind == WeightKind::kExactTopK) col_hi = k + 1;
  if (kind == WeightKind::kRightward) {
    col_lo = k + 1;
    col_hi = d;
  }
  WeightMatrix w(kind, d, k, col_lo, col_hi);
  for (int c = 0; c < d; ++c) {
    for (int j = col_lo; j <= col_hi; ++j) {
      std::int64_t total = 0;
      for (const Ranking& pi : rankings) {
        const int r = pi.RankOf(c);
        switch (kind) {
          case WeightKind::kExactTopK:
            total += std::abs(r - j);
            break;
          case WeightKind::kLeftward:
            total += 2 * std::max(0, r - j);
            break;
          case WeightKind::kRightward:
            total += 2 * std::max(0, j - r);
            break;
        }
      }
      w.Set(c, j, total);
    }
  }
  return w;
}

std::int64_t DirectionalPlacementCost(std::span<const Ranking> rankings,
                                      int candidate, int position,
                                      Direction direction) {
  std::int64_t total = 0;
  for (const Ranking& pi : rankings) {
    const int r = pi.RankOf(candidate);
    if (direction == Direction::kLeftward) {
      total += 2 * std::max(0, r - position);
    } else {
      total += 2 * std::max(0, position - r);
    }
  }
  return total;
}

namespace {

// Shared flow construction: one unit-capacity lane per candidate, gated per
// group with the occupancy bounds, into unit position sinks.
struct WindowNetwork {
  FlowNetwork network;
  int first_candidate_arc = 0;  // arcs are (candidate, position) row-major
  std::vector<int> positions;   // window positions in arc column order
};

WindowNetwork BuildWindowNetwork(const CountBounds& bounds,
                                 const GroupAssignment& groups,
                                 const std::vector<int>& positions,
                                 const WeightMatrix& weights,
                                 std::int64_t unplaced_charge_col) {
  const int d = groups.d;
  const int g = groups.g;
  const int k = static_cast<int>(positions.size());
  WindowNetwork built;
  built.positions = positions;
  FlowNetwork& net = built.network;
  net.num_nodes = 1 + g + d + k + 1;
  net.source = 0;
  net.sink = 1 + g + d + k;
  net.required_flow = k;
  const auto gate_node = [](int a) { return 1 + a; };
  const auto cand_node = [g](int c) { return 1 + g + c; };
  const auto pos_node = [g, d](int idx) { return 1 + g + d + idx; };

  for (int a = 0; a < g; ++a) {
    net.arcs.push_back({net.source, gate_node(a), bounds.lower[a],
                        std::min<std::int64_t>(bounds.upper[a], k), 0});
  }
  for (int c = 0; c < d; ++c) {
    net.arcs.push_back({gate_node(groups.group_of[c]), cand_node(c), 0, 1, 0});
  }
  built.first_candidate_arc = static_cast<int>(net.arcs.size());
  for (int c = 0; c < d; ++c) {
    for (int idx = 0; idx < k; ++idx) {
      const std::int64_t charge =
          unplaced_charge_col > 0
              ? weights.At(c, positions[idx]) -
                    weights.At(c, static_cast<int>(unplaced_charge_col))
              : weights.At(c, positions[idx]);
      net.arcs.push_back({cand_node(c), pos_node(idx), 0, 1, charge});
    }
  }
  for (int idx = 0; idx < k; ++idx) {
    net.arcs.push_back({pos_node(idx), net.sink, 0, 1, 0});
  }
  return built;
}

TopKList ExtractWindow(const WindowNetwork& built, const FlowResult& flow,
                       int d, Side side) {
  const int k = static_cast<int>(built.positions.size());
  TopKList list(d, side, k);
  for (int c = 0; c < d; ++c) {
    for (int idx = 0; idx < k; ++idx) {
      const int arc = built.first_candidate_arc + c * k + idx;
      if (flow.arc_flow[arc] == 1) list.Place(c, built.positions[idx]);
    }
  }
  return list;
}

void RequireGroupsMatch(const CountBounds& bounds,
                        const GroupAssignment& groups, int d) {
  if (bounds.num_groups() != groups.g ||
      static_cast<int>(bounds.upper.size()) != groups.g) {
    throw DimensionMismatch("bounds group count differs from g");
  }
  if (groups.d != d) {
    throw DimensionMismatch("group assignment size differs from rankings");
  }
  for (int a = 0; a < groups.g; ++a) {
    if (bounds.lower[a] < 0 || bounds.lower[a] > bounds.upper[a]) {
      throw InfeasibleBounds("bounds must satisfy 0 <= lower <= upper");
    }
  }
}

}  // namespace

TopKSolution FairTopKExact(std::span<const Ranking> rankings,
                           const CountBounds& bounds,
                           const GroupAssignment& groups) {
  const int d = CommonSize(rankings);
  RequireGroupsMatch(bounds, groups, d);
  if (bounds.side != Side::kTop) {
    throw WrongSide("exact top-k solve needs top-side bounds");
  }
  const int k = bounds.k;
  if (k < 1 || k > d) throw DimensionMismatch("k out of range");

  const WeightMatrix weights =
      BuildWeights(rankings, k, WeightKind::kExactTopK);
  std::vector<int> positions(k);
  for (int j = 0; j < k; ++j) positions[j] = j + 1;
  WindowNetwork built =
      BuildWindowNetwork(bounds, groups, positions, weights, k + 1);
  const auto flow = SolveMinCostFlow(built.network);
  if (!flow.has_value()) {
    throw InfeasibleBounds("no fair top-k selection satisfies the bounds");
  }

  std::int64_t unplaced_total = 0;
  for (int c = 0; c < d; ++c) unplaced_total += weights.At(c, k + 1);
  TopKSolution solution{ExtractWindow(built, *flow, d, Side::kTop),
                        flow->total_cost + unplaced_total};
  return solution;
}

SidedSolution SolveConstrainedSide(std::span<const Ranking> rankings,
                                   const CountBounds& bounds,
                                   const GroupAssignment& groups,
                                   Direction direction) {
  const int d = CommonSize(rankings);
  RequireGroupsMatch(bounds, groups, d);
  const bool top = bounds.side == Side::kTop;
  if (top != (direction == Direction::kLeftward)) {
    throw WrongSide("top windows take leftward costs, bottom windows rightward");
  }
  const int k = bounds.k;
  if (k < 0 || k > d) throw DimensionMismatch("window size out of range");
  if (k == 0) {
    for (int a = 0; a < groups.g; ++a) {
      if (bounds.lower[a] > 0) {
        throw InfeasibleBounds("empty window with positive lower bound");
      }
    }
    return SidedSolution{TopKList(d, Side::kBottom, 0), 0};
  }

  const WeightMatrix weights =
      top ? BuildWeights(rankings, k, WeightKind::kLeftward)
          : BuildWeights(rankings, d - k, WeightKind::kRightward);
  std::vector<int> positions(k);
  for (int j = 0; j < k; ++j) positions[j] = top ? j + 1 : d - k + j + 1;
  WindowNetwork built =
      BuildWindowNetwork(bounds, groups, positions, weights, 0);
  const auto flow = SolveMinCostFlow(built.network);
  if (!flow.has_value()) {
    throw InfeasibleBounds("no fair window placement satisfies the bounds");
  }
  return SidedSolution{
      ExtractWindow(built, *flow, d, top ? Side::kTop : Side::kBottom),
      flow->total_cost};
}

Ranking CompleteList(std::span<const Ranking> rankings,
                     const TopKList& partial) {
  const int d = CommonSize(rankings);
  if (partial.d() != d) {
    throw DimensionMismatch("partial list size differs from rankings");
  }
  if (partial.PlacedCount() != partial.k()) {
    throw DimensionMismatch("partial list is not fully placed");
  }
  const bool top = partial.side() == Side::kTop;
  const int k = partial.k();

  std::vector<int> rank_of(d, 0);
  std::vector<int> free_candidates;
  for (int c = 0; c < d; ++c) {
    if (partial.Contains(c)) {
      rank_of[c] = partial.PositionOf(c);
    } else {
      free_candidates.push_back(c);
    }
  }
  const int m = static_cast<int>(free_candidates.size());
  if (m == 0) return Ranking(std::move(rank_of));

  // Remaining positions, ascending; a top list leaves k+1..d free, a bottom
  // list leaves 1..d-k free. Charges stay in the list's own direction so the
  // completed ranking minimizes the same one-sided objective.
  std::vector<int> free_positions(m);
  for (int idx = 0; idx < m; ++idx) {
    free_positions[idx] = top ? k + 1 + idx : idx + 1;
  }
  const Direction direction =
      top ? Direction::kLeftward : Direction::kRightward;
  AssignmentProblem problem;
  problem.cost.assign(m, std::vector<std::int64_t>(m, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      problem.cost[i][j] = DirectionalPlacementCost(
          rankings, free_candidates[i], free_positions[j], direction);
    }
  }
  const AssignmentResult assignment = SolveAssignment(problem);
  for (int i = 0; i < m; ++i) {
    rank_of[free_candidates[i]] = free_positions[assignment.right_of_left[i]];
  }
  return Ranking(std::move(rank_of));
}

std::string VariantName(Variant variant) {
  switch (variant) {
    case Variant::kAlg1:
      return "alg1";
    case Variant::kAlg2:
      return "alg2";
    case Variant::kAlg3:
      return "alg3";
    case Variant::kBfi:
      return "bfi";
    case Variant::kUnconstrained:
      return "unconstrained";
  }
  return "unknown";
}

namespace {

struct Aggregated {
  Ranking ranking;
  std::int64_t objective;
};

Aggregated RunAlg1Core(const Instance& inst) {
  const CountBounds bounds = DeriveTopKBounds(inst.fairness, inst.groups);
  const SidedSolution side = SolveConstrainedSide(
      inst.rankings, bounds, inst.groups, Direction::kLeftward);
  Ranking sigma = CompleteList(inst.rankings, side.list);
  const std::int64_t objective = Objective(inst.rankings, sigma);
  return Aggregated{std::move(sigma), objective};
}

Aggregated RunAlg2Core(const Instance& inst) {
  const CountBounds complement =
      DeriveComplementBounds(inst.fairness, inst.groups);
  if (complement.k == 0) {
    // k = d: the whole ranking is the constrained window and the derived
    // bounds are vacuous, so the unconstrained optimum is fair.
    UnconstrainedSolution unc = UnconstrainedAggregate(inst.rankings);
    return Aggregated{std::move(unc.ranking), unc.objective};
  }
  const SidedSolution side = SolveConstrainedSide(
      inst.rankings, complement, inst.groups, Direction::kRightward);
  Ranking sigma = CompleteList(inst.rankings, side.list);
  const std::int64_t objective = Objective(inst.rankings, sigma);
  return Aggregated{std::move(sigma), objective};
}

AggregationResult MakeResult(const Instance& inst, Aggregated aggregated,
                             Variant variant, double wall_ms) {
  const UnconstrainedSolution unc = UnconstrainedAggregate(inst.rankings);
  std::optional<Rational> ratio;
  if (unc.objective > 0) {
    ratio = Rational(aggregated.objective, unc.objective);
  } else if (aggregated.objective == 0) {
    ratio = Rational(1, 1);
  }
  return AggregationResult{std::move(aggregated.ranking),
                           aggregated.objective,
                           variant,
                           unc.objective,
                           ratio,
                           wall_ms};
}

}  // namespace

AggregationResult AggregateAlg1(const Instance& inst) {
  const auto start = Clock::now();
  Aggregated core = RunAlg1Core(inst);
  const double wall = ElapsedMs(start);
  return MakeResult(inst, std::move(core), Variant::kAlg1, wall);
}

AggregationResult AggregateAlg2(const Instance& inst) {
  const auto start = Clock::now();
  Aggregated core = RunAlg2Core(inst);
  const double wall = ElapsedMs(start);
  return MakeResult(inst, std::move(core), Variant::kAlg2, wall);
}

AggregationResult AggregateAlg3(const Instance& inst) {
  const auto start = Clock::now();
  Aggregated first = RunAlg1Core(inst);
  Aggregated second = RunAlg2Core(inst);
  Aggregated& better = first.objective <= second.objective ? first : second;
  const double wall = ElapsedMs(start);
  return MakeResult(inst, std::move(better), Variant::kAlg3, wall);
}

Ranking ClosestFairRanking(const Ranking& pi, const CountBounds& bounds,
                           const GroupAssignment& groups,
                           std::int64_t enumeration_cap) {
  if (pi.d() != groups.d) {
    throw DimensionMismatch("ranking size differs from group assignment");
  }
  if (bounds.side != Side::kTop) {
    throw WrongSide("closest fair ranking needs top-side bounds");
  }
  RequireGroupsMatch(bounds, groups, groups.d);
  const int d = groups.d;
  const int g = groups.g;
  const int k = bounds.k;
  const std::vector<int> sizes = groups.GroupSizes();

  std::int64_t grid = 1;
  std::vector<std::int64_t> max_count(g);
  for (int a = 0; a < g; ++a) {
    max_count[a] = std::min<std::int64_t>(bounds.upper[a], sizes[a]);
    if (max_count[a] < bounds.lower[a]) {
      throw InfeasibleBounds("group lower bound exceeds group size");
    }
    const std::int64_t options = max_count[a] - bounds.lower[a] + 1;
    if (grid > enumeration_cap / options) {
      throw EnumerationCapExceeded("occupancy grid larger than cap");
    }
    grid *= options;
  }

  // Members of each group in pi's order; for a fixed occupancy vector the
  // closest fair ranking takes each group's best members and keeps pi's
  // relative order inside the window and outside it.
  std::vector<std::vector<int>> members(g);
  for (int c = 0; c < d; ++c) members[groups.group_of[c]].push_back(c);
  for (auto& list : members) {
    std::sort(list.begin(), list.end(), [&pi](int a, int b) {
      return pi.RankOf(a) < pi.RankOf(b);
    });
  }

  std::vector<std::int64_t> suffix_min(g + 1, 0), suffix_max(g + 1, 0);
  for (int a = g - 1; a >= 0; --a) {
    suffix_min[a] = suffix_min[a + 1] + bounds.lower[a];
    suffix_max[a] = suffix_max[a + 1] + max_count[a];
  }

  std::vector<std::int64_t> counts(g, 0);
  std::optional<std::int64_t> best_distance;
  Ranking best = pi;
  const auto evaluate = [&]() {
    std::vector<int> selected;
    std::vector<char> in_window(d, 0);
    for (int a = 0; a < g; ++a) {
      for (int idx = 0; idx < counts[a]; ++idx) {
        selected.push_back(members[a][idx]);
        in_window[members[a][idx]] = 1;
      }
    }
    std::sort(selected.begin(), selected.end(), [&pi](int a, int b) {
      return pi.RankOf(a) < pi.RankOf(b);
    });
    std::vector<int> rest;
    for (int c = 0; c < d; ++c) {
      if (!in_window[c]) rest.push_back(c);
    }
    std::sort(rest.begin(), rest.end(), [&pi](int a, int b) {
      return pi.RankOf(a) < pi.RankOf(b);
    });
    std::vector<int> rank_of(d, 0);
    for (int p = 0; p < static_cast<int>(selected.size()); ++p) {
      rank_of[selected[p]] = p + 1;
    }
    for (int p = 0; p < static_cast<int>(rest.size()); ++p) {
      rank_of[rest[p]] = k + 1 + p;
    }
    Ranking sigma{std::move(rank_of)};
    const std::int64_t distance = Footrule(pi, sigma);
    if (!best_distance.has_value() || distance < *best_distance) {
      best_distance = distance;
      best = std::move(sigma);
    }
  };

  const auto recurse = [&](auto&& self, int a, std::int64_t used) -> void {
    if (a == g) {
      if (used == k) evaluate();
      return;
    }
    for (std::int64_t take = bounds.lower[a]; take <= max_count[a]; ++take) {
      const std::int64_t remaining = k - used - take;
      if (remaining < 0 || remaining < suffix_min[a + 1] ||
          remaining > suffix_max[a + 1]) {
        continue;
      }
      counts[a] = take;
      self(self, a + 1, used + take);
    }
    counts[a] = 0;
  };
  recurse(recurse, 0, 0);

  if (!best_distance.has_value()) {
    throw InfeasibleBounds("no fair occupancy vector exists");
  }
  return best;
}

AggregationResult BfiAggregate(const Instance& inst,
                               std::int64_t enumeration_cap) {
  const auto start = Clock::now();
  const CountBounds bounds = DeriveTopKBounds(inst.fairness, inst.groups);
  std::optional<Aggregated> best;
  for (const Ranking& pi : inst.rankings) {
    Ranking sigma = ClosestFairRanking(pi, bounds, inst.groups, enumeration_cap);
    const std::int64_t objective = Objective(inst.rankings, sigma);
    if (!best.has_value() || objective < best->objective) {
      best = Aggregated{std::move(sigma), objective};
    }
  }
  if (!best.has_value()) throw DimensionMismatch("no input rankings");
  const double wall = ElapsedMs(start);
  return MakeResult(inst, std::move(*best), Variant::kBfi, wall);
}

UnconstrainedSolution UnconstrainedAggregate(
    std::span<const Ranking> rankings) {
  const int d = CommonSize(rankings);
  AssignmentProblem problem;
  problem.cost.assign(d, std::vector<std::int64_t>(d, 0));
  for (int c = 0; c < d; ++c) {
    for (int j = 1; j <= d; ++j) {
      std::int64_t total = 0;
      for (const Ranking& pi : rankings) total += std::abs(pi.RankOf(c) - j);
      problem.cost[c][j - 1] = total;
    }
  }
  const AssignmentResult assignment = SolveAssignment(problem);
  std::vector<int> rank_of(d);
  for (int c = 0; c < d; ++c) rank_of[c] = assignment.right_of_left[c] + 1;
  return UnconstrainedSolution{Ranking(std::move(rank_of)),
                               assignment.total_cost};
}

}  // namespace fairagg
