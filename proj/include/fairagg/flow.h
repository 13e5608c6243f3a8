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

#ifndef FAIRAGG_FLOW_H_
#define FAIRAGG_FLOW_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "fairagg/core.h"

namespace fairagg {

// Directed arc with flow bounds lower <= upper and a per-unit cost. Costs may
// be negative; the solver handles them via an initial potential computation.
struct Arc {
  int from = 0;
  int to = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::int64_t cost = 0;
};

struct FlowNetwork {
  int num_nodes = 0;
  std::vector<Arc> arcs;
  int source = 0;
  int sink = 0;
  std::int64_t required_flow = 0;
};

struct FlowResult {
  std::vector<std::int64_t> arc_flow;  // parallel to FlowNetwork::arcs
  std::int64_t total_cost = 0;
};

// Minimum-cost flow of exactly required_flow units from source to sink,
// honoring arc lower bounds. Lower bounds are removed by the standard
// excess/deficit transformation with an auxiliary source/sink pair, then
// successive shortest paths with node potentials find the optimum. Returns
// nullopt when no feasible flow exists. Flows are integral because demands
// and bounds are.
std::optional<FlowResult> SolveMinCostFlow(const FlowNetwork& network);

// Square assignment problem; cost[i][j] may be negative.
struct AssignmentProblem {
  std::vector<std::vector<std::int64_t>> cost;

  int size() const { return static_cast<int>(cost.size()); }
};

struct AssignmentResult {
  std::vector<int> right_of_left;  // right_of_left[i] = column matched to i
  std::int64_t total_cost = 0;
};

// Optimal assignment, deterministic: among all minimum-cost assignments,
// returns the one whose (row 0, row 1, ...) column sequence is
// lexicographically smallest. The refinement restricts to edges tight under
// an optimal dual and greedily fixes rows to the smallest column that keeps
// a perfect matching available.
AssignmentResult SolveAssignment(const AssignmentProblem& problem);

}  // namespace fairagg

#endif  // FAIRAGG_FLOW_H_
