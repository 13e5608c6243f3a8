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

#ifndef FAIRAGG_SOLVERS_H_
#define FAIRAGG_SOLVERS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairagg/core.h"
#include "fairagg/metrics.h"

namespace fairagg {

// Placement cost tables, precomputed once per solve.
//   kExactTopK:  w[c][j] = sum over inputs pi of |pi(c) - j|, columns 1..k+1;
//                column k+1 is the charge for leaving c unplaced.
//   kLeftward:   w[c][j] = 2 * sum over inputs of max(0, pi(c) - j),
//                columns 1..k (cost of pulling c leftward to j).
//   kRightward:  w[c][j] = 2 * sum over inputs of max(0, j - pi(c)),
//                columns k+1..d (cost of pushing c rightward to j).
enum class WeightKind { kExactTopK, kLeftward, kRightward };

class WeightMatrix {
 public:
  WeightMatrix(WeightKind kind, int d, int k, int col_lo, int col_hi)
      : kind_(kind), d_(d), k_(k), col_lo_(col_lo), col_hi_(col_hi),
        w_(d, std::vector<std::int64_t>(col_hi - col_lo + 1, 0)) {}

  WeightKind kind() const { return kind_; }
  int d() const { return d_; }
  int k() const { return k_; }
  int col_lo() const { return col_lo_; }
  int col_hi() const { return col_hi_; }

  std::int64_t At(int candidate, int position) const {
    return w_[candidate][position - col_lo_];
  }
  void Set(int candidate, int position, std::int64_t value) {
    w_[candidate][position - col_lo_] = value;
  }

 private:
  WeightKind kind_;
  int d_;
  int k_;
  int col_lo_;
  int col_hi_;
  std::vector<std::vector<std::int64_t>> w_;
};

WeightMatrix BuildWeights(std::span<const Ranking> rankings, int k,
                          WeightKind kind);

// Directional cost of placing one candidate at one position, summed over
// inputs; matches the corresponding WeightMatrix entry.
std::int64_t DirectionalPlacementCost(std::span<const Ranking> rankings,
                                      int candidate, int position,
                                      Direction direction);

struct TopKSolution {
  TopKList list;
  std::int64_t objective = 0;
};

// Exact minimum of the generalized top-k footrule objective over fair top-k
// lists, via min-cost flow on a source -> group gate -> candidate ->
// position -> sink network whose gate arcs carry the occupancy bounds.
// Unplaced candidates are charged at the rank-(k+1) column. Throws
// InfeasibleBounds when no fair list exists.
TopKSolution FairTopKExact(std::span<const Ranking> rankings,
                           const CountBounds& bounds,
                           const GroupAssignment& groups);

struct SidedSolution {
  TopKList list;
  std::int64_t directional_cost = 0;
};

// Minimum-directional-cost fair placement of one window: leftward costs for
// a top window, rightward costs for a bottom window. Same network as
// FairTopKExact but with directional weights and no unplaced charge.
SidedSolution SolveConstrainedSide(std::span<const Ranking> rankings,
                                   const CountBounds& bounds,
                                   const GroupAssignment& groups,
                                   Direction direction);

// Extends a partial list to a full ranking by assigning the remaining
// candidates to the remaining positions at minimum total directional cost:
// leftward-unplaced candidates complete a top list rightward (positions
// k+1..d with leftward charges), and symmetrically for a bottom list.
Ranking CompleteList(std::span<const Ranking> rankings,
                     const TopKList& partial);

enum class Variant { kAlg1, kAlg2, kAlg3, kBfi, kUnconstrained };

std::string VariantName(Variant variant);

struct AggregationResult {
  Ranking ranking;
  std::int64_t objective = 0;
  Variant variant = Variant::kAlg1;
  // Optimum over all (not necessarily fair) rankings; lower-bounds the fair
  // optimum, so objective/unconstrained_objective certifies solution quality.
  std::int64_t unconstrained_objective = 0;
  // Exact objective / unconstrained_objective; empty when the denominator is
  // zero but the objective is not.
  std::optional<Rational> certified_ratio;
  double wall_ms = 0.0;
};

// Fair top window at minimum leftward cost, completed rightward.
AggregationResult AggregateAlg1(const Instance& inst);
// Fair bottom window at minimum rightward cost, completed leftward.
AggregationResult AggregateAlg2(const Instance& inst);
// Better of the two one-sided aggregates; ties go to the top-window route.
AggregationResult AggregateAlg3(const Instance& inst);

// Fair ranking closest to pi in footrule distance. Enumerates feasible
// per-group top-k occupancy vectors and, for each, places the best members
// of each group in pi's relative order; order-preserving placement is
// optimal for a fixed occupancy vector. Throws EnumerationCapExceeded when
// the occupancy grid is larger than enumeration_cap.
Ranking ClosestFairRanking(const Ranking& pi, const CountBounds& bounds,
                           const GroupAssignment& groups,
                           std::int64_t enumeration_cap = 1000000);

// Best fair interpolation: the input whose closest fair ranking has the
// smallest objective wins.
AggregationResult BfiAggregate(const Instance& inst,
                               std::int64_t enumeration_cap = 1000000);

struct UnconstrainedSolution {
  Ranking ranking;
  std::int64_t objective = 0;
};

// Exact footrule aggregation with no fairness constraints, as a candidate ->
// position assignment problem.
UnconstrainedSolution UnconstrainedAggregate(std::span<const Ranking> rankings);

}  // namespace fairagg

#endif  // FAIRAGG_SOLVERS_H_
