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

#include "fairagg/flow.h"

#include <algorithm>
#include <limits>
#include <queue>

namespace fairagg {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Successive shortest augmenting paths with node potentials. Edges are
// stored as residual pairs: forward at even indices, reverse at odd.
class McmfGraph {
 public:
  explicit McmfGraph(int num_nodes) : adj_(num_nodes) {}

  int AddEdge(int from, int to, std::int64_t cap, std::int64_t cost) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, cap, cost});
    adj_[from].push_back(id);
    edges_.push_back({from, 0, -cost});
    adj_[to].push_back(id + 1);
    return id;
  }

  std::int64_t FlowOn(int edge_id) const { return edges_[edge_id + 1].cap; }

  // Pushes up to `want` units from s to t; returns the amount pushed.
  std::int64_t Run(int s, int t, std::int64_t want) {
    const int n = static_cast<int>(adj_.size());
    std::vector<std::int64_t> potential(n, 0);
    InitPotentials(s, &potential);

    std::int64_t pushed = 0;
    std::vector<std::int64_t> dist(n);
    std::vector<int> prev_edge(n);
    while (pushed < want) {
      // Dijkstra on reduced costs; ties broken by node id for determinism.
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(prev_edge.begin(), prev_edge.end(), -1);
      dist[s] = 0;
      using Item = std::pair<std::int64_t, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
      heap.push({0, s});
      while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du != dist[u]) continue;
        for (int id : adj_[u]) {
          const Edge& e = edges_[id];
          if (e.cap <= 0) continue;
          const std::int64_t nd =
              du + e.cost + potential[u] - potential[e.to];
          if (nd < dist[e.to]) {
            dist[e.to] = nd;
            prev_edge[e.to] = id;
            heap.push({nd, e.to});
          }
        }
      }
      if (dist[t] >= kInf) break;
      for (int v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      std::int64_t slack = want - pushed;
      for (int v = t; v != s;) {
        const Edge& e = edges_[prev_edge[v]];
        slack = std::min(slack, e.cap);
        v = edges_[prev_edge[v] ^ 1].to;
      }
      for (int v = t; v != s;) {
        edges_[prev_edge[v]].cap -= slack;
        edges_[prev_edge[v] ^ 1].cap += slack;
        v = edges_[prev_edge[v] ^ 1].to;
      }
      pushed += slack;
    }
    return pushed;
  }

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    std::int64_t cost;
  };

  // Bellman-Ford over positive-capacity edges so Dijkstra's reduced costs
  // start nonnegative even with negative arc costs. The networks built here
  // are layered, so no negative cycle can exist; guard anyway.
  void InitPotentials(int s, std::vector<std::int64_t>* potential) {
    bool has_negative = false;
    for (const Edge& e : edges_) {
      if (e.cap > 0 && e.cost < 0) has_negative = true;
    }
    if (!has_negative) return;
    const int n = static_cast<int>(adj_.size());
    std::vector<std::int64_t>& pot = *potential;
    std::fill(pot.begin(), pot.end(), kInf);
    pot[s] = 0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int u = 0; u < n; ++u) {
        if (pot[u] >= kInf) continue;
        for (int id : adj_[u]) {
          const Edge& e = edges_[id];
          if (e.cap > 0 && pot[u] + e.cost < pot[e.to]) {
            pot[e.to] = pot[u] + e.cost;
            changed = true;
          }
        }
      }
      if (!changed) break;
      if (round == n - 1) throw Error("negative-cost cycle in flow network");
    }
    for (std::int64_t& p : pot) {
      if (p >= kInf) p = 0;
    }
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

void ValidateNetwork(const FlowNetwork& network) {
  const int n = network.num_nodes;
  if (network.source < 0 || network.source >= n || network.sink < 0 ||
      network.sink >= n || network.source == network.sink) {
    throw DimensionMismatch("bad source/sink");
  }
  if (network.required_flow < 0) {
    throw DimensionMismatch("negative required flow");
  }
  for (const Arc& arc : network.arcs) {
    if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n) {
      throw DimensionMismatch("arc endpoint out of range");
    }
    if (arc.lower < 0 || arc.lower > arc.upper) {
      throw DimensionMismatch("arc bounds must satisfy 0 <= lower <= upper");
    }
    if (arc.to == network.source || arc.from == network.sink) {
      throw DimensionMismatch("arc enters source or leaves sink");
    }
  }
}

}  // namespace

std::optional<FlowResult> SolveMinCostFlow(const FlowNetwork& network) {
  ValidateNetwork(network);
  const int n = network.num_nodes;
  const int aux_source = n;
  const int aux_sink = n + 1;
  McmfGraph graph(n + 2);

  // Remove lower bounds: ship every arc's lower amount unconditionally and
  // track the node imbalance it creates; a virtual sink->source arc of
  // exactly required_flow turns the s-t flow into a circulation.
  std::vector<std::int64_t> imbalance(n, 0);
  std::vector<int> edge_of_arc;
  edge_of_arc.reserve(network.arcs.size());
  for (const Arc& arc : network.arcs) {
    edge_of_arc.push_back(
        graph.AddEdge(arc.from, arc.to, arc.upper - arc.lower, arc.cost));
    imbalance[arc.to] += arc.lower;
    imbalance[arc.from] -= arc.lower;
  }
  imbalance[network.source] += network.required_flow;
  imbalance[network.sink] -= network.required_flow;

  std::int64_t needed = 0;
  for (int v = 0; v < n; ++v) {
    if (imbalance[v] > 0) {
      graph.AddEdge(aux_source, v, imbalance[v], 0);
      needed += imbalance[v];
    } else if (imbalance[v] < 0) {
      graph.AddEdge(v, aux_sink, -imbalance[v], 0);
    }
  }

  if (graph.Run(aux_source, aux_sink, needed) < needed) return std::nullopt;

  FlowResult result;
  result.arc_flow.resize(network.arcs.size());
  for (size_t i = 0; i < network.arcs.size(); ++i) {
    result.arc_flow[i] =
        network.arcs[i].lower + graph.FlowOn(edge_of_arc[i]);
    result.total_cost += result.arc_flow[i] * network.arcs[i].cost;
  }
  return result;
}

namespace {

// Bottom-up Hungarian algorithm with potentials; p[j] is the row matched to
// column j, 1-indexed, column 0 virtual.
struct HungarianState {
  std::vector<std::int64_t> u, v;
  std::vector<int> p;
};

HungarianState RunHungarian(const std::vector<std::vector<std::int64_t>>& a,
                            int m) {
  HungarianState st;
  st.u.assign(m + 1, 0);
  st.v.assign(m + 1, 0);
  st.p.assign(m + 1, 0);
  std::vector<int> way(m + 1, 0);
  for (int i = 1; i <= m; ++i) {
    st.p[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = st.p[j0];
      int j1 = -1;
      std::int64_t delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = a[i0 - 1][j - 1] - st.u[i0] - st.v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          st.u[st.p[j]] += delta;
          st.v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (st.p[j0] != 0);
    do {
      const int j1 = way[j0];
      st.p[j0] = st.p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  return st;
}

// Kuhn's matching over the tight subgraph, used to test whether a partial
// greedy fix still extends to a perfect matching.
bool TryAugment(int row, const std::vector<std::vector<int>>& tight,
                const std::vector<char>& col_banned, std::vector<char>* seen,
                std::vector<int>* match_row_of_col) {
  for (int j : tight[row]) {
    if (col_banned[j] || (*seen)[j]) continue;
    (*seen)[j] = 1;
    if ((*match_row_of_col)[j] == -1 ||
        TryAugment((*match_row_of_col)[j], tight, col_banned, seen,
                   match_row_of_col)) {
      (*match_row_of_col)[j] = row;
      return true;
    }
  }
  return false;
}

bool RemainingRowsMatch(int first_row, int m,
                        const std::vector<std::vector<int>>& tight,
                        const std::vector<char>& col_banned) {
  std::vector<int> match_row_of_col(m, -1);
  std::vector<char> seen(m, 0);
  for (int r = first_row; r < m; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!TryAugment(r, tight, col_banned, &seen, &match_row_of_col)) {
      return false;
    }
  }
  return true;
}

}  // namespace

AssignmentResult SolveAssignment(const AssignmentProblem& problem) {
  const int m = problem.size();
  AssignmentResult result;
  if (m == 0) return result;
  for (const auto& row : problem.cost) {
    if (static_cast<int>(row.size()) != m) {
      throw DimensionMismatch("cost matrix is not square");
    }
  }

  const HungarianState st = RunHungarian(problem.cost, m);

  // Optimal duals certify optimality; all optimal assignments live in the
  // subgraph of tight edges.
  std::vector<std::vector<int>> tight(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const std::int64_t slack = problem.cost[i][j] - st.u[i + 1] - st.v[j + 1];
      if (slack < 0) throw Error("internal: infeasible assignment duals");
      if (slack == 0) tight[i].push_back(j);
    }
  }

  std::vector<char> col_banned(m, 0);
  result.right_of_left.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    bool fixed = false;
    for (int j : tight[i]) {
      if (col_banned[j]) continue;
      col_banned[j] = 1;
      if (RemainingRowsMatch(i + 1, m, tight, col_banned)) {
        result.right_of_left[i] = j;
        fixed = true;
        break;
      }
      col_banned[j] = 0;
    }
    if (!fixed) throw Error("internal: tight matching lost");
    result.total_cost += problem.cost[i][result.right_of_left[i]];
  }
  return result;
}

}  // namespace fairagg
