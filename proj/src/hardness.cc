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

#include "fairagg/hardness.h"

#include <algorithm>
#include <sstream>

namespace fairagg {

int FairMatchingInstance::z_size() const {
  int count = 0;
  for (char flag : in_z) count += flag != 0;
  return count;
}

CnfFormula ParseDimacs(const std::string& text) {
  std::istringstream in(text);
  CnfFormula formula;
  int declared_clauses = -1;
  bool header_seen = false;
  std::vector<int> current;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      if (header_seen) throw MalformedFormula("duplicate dimacs header");
      std::string kind;
      if (!(tokens >> kind) || kind != "cnf" ||
          !(tokens >> formula.num_vars) || !(tokens >> declared_clauses) ||
          formula.num_vars < 0 || declared_clauses < 0) {
        throw MalformedFormula("bad dimacs header: " + line);
      }
      header_seen = true;
      continue;
    }
    if (!header_seen) {
      throw MalformedFormula("clause before dimacs header");
    }
    tokens.clear();
    tokens.str(line);
    int literal;
    while (tokens >> literal) {
      if (literal == 0) {
        formula.clauses.push_back(current);
        current.clear();
        continue;
      }
      const int var = std::abs(literal);
      if (var < 1 || var > formula.num_vars) {
        std::ostringstream msg;
        msg << "literal " << literal << " outside 1.." << formula.num_vars;
        throw MalformedFormula(msg.str());
      }
      current.push_back(literal);
    }
    if (!tokens.eof()) {
      throw MalformedFormula("non-integer token in clause line: " + line);
    }
  }
  if (!header_seen) throw MalformedFormula("missing dimacs header");
  if (!current.empty()) throw MalformedFormula("unterminated final clause");
  if (static_cast<int>(formula.clauses.size()) != declared_clauses) {
    std::ostringstream msg;
    msg << "header declares " << declared_clauses << " clauses, found "
        << formula.clauses.size();
    throw MalformedFormula(msg.str());
  }
  return formula;
}

void Check33Invariants(const CnfFormula& formula) {
  const int n = formula.num_vars;
  const int m = static_cast<int>(formula.clauses.size());
  if (n < 1) throw MalformedFormula("formula has no variables");
  if (m < 1) throw MalformedFormula("formula has no clauses");
  std::vector<int> occurrences(n + 1, 0);
  for (size_t c = 0; c < formula.clauses.size(); ++c) {
    const auto& clause = formula.clauses[c];
    if (clause.size() > 3) {
      std::ostringstream msg;
      msg << "clause " << c << " has " << clause.size() << " literals";
      throw MalformedFormula(msg.str());
    }
    for (int literal : clause) {
      const int var = std::abs(literal);
      if (var < 1 || var > n) {
        throw MalformedFormula("literal variable out of range");
      }
      if (++occurrences[var] > 3) {
        std::ostringstream msg;
        msg << "variable " << var << " occurs more than 3 times";
        throw MalformedFormula(msg.str());
      }
    }
  }
  if (m > 3 * n) {
    std::ostringstream msg;
    msg << "formula has " << m << " clauses > 3n = " << 3 * n;
    throw MalformedFormula(msg.str());
  }
}

namespace {

// Left vertex ids: variable i (0-based) owns 6i..6i+5, laid out as the true
// and false copies of occurrence slots 1..3: (T,1),(F,1),(T,2),(F,2),(T,3),
// (F,3). Both copies of slot j share color 3i + j - 1.
int LeftVertex(int var_index, int slot, bool positive) {
  return 6 * var_index + 2 * (slot - 1) + (positive ? 0 : 1);
}

}  // namespace

FairMatchingInstance Reduce33Sat(const CnfFormula& formula) {
  Check33Invariants(formula);
  const int n = formula.num_vars;
  const int m = static_cast<int>(formula.clauses.size());
  const int size = 6 * n;

  FairMatchingInstance inst;
  inst.size = size;
  inst.weight.assign(size, std::vector<std::int64_t>(size, 0));
  inst.in_z.assign(size, 0);
  inst.color_of.resize(size);
  inst.num_colors = 3 * n;
  inst.alpha.assign(inst.num_colors, Rational(1, 3 * n));
  inst.beta.assign(inst.num_colors, Rational(1, 3 * n));
  inst.target = 3 * n + m;
  inst.left_label.resize(size);
  inst.right_label.resize(size);

  for (int i = 0; i < n; ++i) {
    for (int slot = 1; slot <= 3; ++slot) {
      const std::string base = "x" + std::to_string(i + 1);
      inst.left_label[LeftVertex(i, slot, true)] =
          base + ".T" + std::to_string(slot);
      inst.left_label[LeftVertex(i, slot, false)] =
          base + ".F" + std::to_string(slot);
      inst.color_of[LeftVertex(i, slot, true)] = 3 * i + slot - 1;
      inst.color_of[LeftVertex(i, slot, false)] = 3 * i + slot - 1;
    }
  }

  // Right side: per variable three selector vertices a,b,c in Z, then one
  // vertex per clause, then dummies. Selector edges pair each selector with
  // one true copy and one false copy so that matching all three selectors at
  // weight 1 with distinct colors forces the all-true or all-false pattern:
  //   a -- (T,1), (F,3);  b -- (T,2), (F,1);  c -- (T,3), (F,2).
  const auto selector = [](int i, int which) { return 3 * i + which; };
  for (int i = 0; i < n; ++i) {
    const std::string base = "x" + std::to_string(i + 1);
    inst.right_label[selector(i, 0)] = base + ".a";
    inst.right_label[selector(i, 1)] = base + ".b";
    inst.right_label[selector(i, 2)] = base + ".c";
    for (int which = 0; which < 3; ++which) inst.in_z[selector(i, which)] = 1;
    inst.weight[LeftVertex(i, 1, true)][selector(i, 0)] = 1;
    inst.weight[LeftVertex(i, 3, false)][selector(i, 0)] = 1;
    inst.weight[LeftVertex(i, 2, true)][selector(i, 1)] = 1;
    inst.weight[LeftVertex(i, 1, false)][selector(i, 1)] = 1;
    inst.weight[LeftVertex(i, 3, true)][selector(i, 2)] = 1;
    inst.weight[LeftVertex(i, 2, false)][selector(i, 2)] = 1;
  }

  // Clause vertices: the r-th occurrence of variable v contributes the edge
  // from its true copy when the literal is positive (satisfied by v = true)
  // and from its false copy when negated.
  std::vector<int> occurrence_count(n + 1, 0);
  for (int c = 0; c < m; ++c) {
    const int clause_vertex = 3 * n + c;
    inst.right_label[clause_vertex] = "clause" + std::to_string(c + 1);
    for (int literal : formula.clauses[c]) {
      const int var = std::abs(literal);
      const int slot = ++occurrence_count[var];
      inst.weight[LeftVertex(var - 1, slot, literal > 0)][clause_vertex] = 1;
    }
  }
  for (int t = 3 * n + m; t < size; ++t) {
    inst.right_label[t] = "dummy" + std::to_string(t - 3 * n - m + 1);
  }
  return inst;
}

std::int64_t MaxFairMatchingValueOnReduction(
    const FairMatchingInstance& instance, std::int64_t stop_at) {
  const int size = instance.size;
  // Right vertices carrying weight-1 edges, with their left neighborhoods.
  std::vector<int> active;
  std::vector<std::vector<int>> neighbors(size);
  for (int w = 0; w < size; ++w) {
    for (int v = 0; v < size; ++v) {
      if (instance.weight[v][w] == 1) neighbors[w].push_back(v);
    }
    if (!neighbors[w].empty()) active.push_back(w);
  }

  const int total = static_cast<int>(active.size());
  std::vector<char> left_used(size, 0);
  std::vector<char> color_used(instance.num_colors, 0);
  std::int64_t best = 0;
  bool done = false;

  // Depth-first over active right vertices: match one weight-1 neighbor or
  // skip. A Z placement consumes its color (fairness allows one per color in
  // Z); weight-0 completion to a fair perfect matching always exists because
  // at most one copy per color carries any clause edge.
  const auto dfs = [&](auto&& self, int idx, std::int64_t value) -> void {
    if (done) return;
    if (value + (total - idx) <= best) return;
    if (idx == total) {
      best = std::max(best, value);
      if (stop_at > 0 && best >= stop_at) done = true;
      return;
    }
    const int w = active[idx];
    const bool in_z = instance.in_z[w] != 0;
    for (int v : neighbors[w]) {
      if (left_used[v]) continue;
      const int color = instance.color_of[v];
      if (in_z && color_used[color]) continue;
      left_used[v] = 1;
      if (in_z) color_used[color] = 1;
      self(self, idx + 1, value + 1);
      left_used[v] = 0;
      if (in_z) color_used[color] = 0;
      if (done) return;
    }
    self(self, idx + 1, value);
  };
  dfs(dfs, 0, 0);
  return best;
}

SatResult Decide33SatViaMatching(const CnfFormula& formula, int max_vars) {
  Check33Invariants(formula);
  if (formula.num_vars > max_vars) {
    std::ostringstream msg;
    msg << "reduction size 6n = " << 6 * formula.num_vars
        << " exceeds guard of " << 6 * max_vars;
    throw TooLarge(msg.str());
  }
  const FairMatchingInstance inst = Reduce33Sat(formula);
  const std::int64_t value = MaxFairMatchingValueOnReduction(inst, inst.target);
  return value >= inst.target ? SatResult::kSat : SatResult::kUnsat;
}

nlohmann::ordered_json ReductionToJson(const FairMatchingInstance& instance) {
  nlohmann::ordered_json out;
  out["size"] = instance.size;
  out["target"] = instance.target;
  out["num_colors"] = instance.num_colors;
  out["z"] = nlohmann::json::array();
  for (int w = 0; w < instance.size; ++w) {
    if (instance.in_z[w]) out["z"].push_back(w);
  }
  out["left"] = nlohmann::json::array();
  for (int v = 0; v < instance.size; ++v) {
    nlohmann::ordered_json vertex;
    vertex["id"] = v;
    vertex["label"] = instance.left_label[v];
    vertex["color"] = instance.color_of[v];
    out["left"].push_back(vertex);
  }
  out["right"] = nlohmann::json::array();
  for (int w = 0; w < instance.size; ++w) {
    nlohmann::ordered_json vertex;
    vertex["id"] = w;
    vertex["label"] = instance.right_label[w];
    vertex["in_z"] = instance.in_z[w] != 0;
    out["right"].push_back(vertex);
  }
  out["alpha"] = nlohmann::json::array();
  out["beta"] = nlohmann::json::array();
  for (int c = 0; c < instance.num_colors; ++c) {
    out["alpha"].push_back(instance.alpha[c].ToString());
    out["beta"].push_back(instance.beta[c].ToString());
  }
  out["weight_one_edges"] = nlohmann::json::array();
  for (int v = 0; v < instance.size; ++v) {
    for (int w = 0; w < instance.size; ++w) {
      if (instance.weight[v][w] == 1) {
        out["weight_one_edges"].push_back(
            nlohmann::ordered_json::array({v, w}));
      }
    }
  }
  return out;
}

}  // namespace fairagg
