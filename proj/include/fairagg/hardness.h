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

#ifndef FAIRAGG_HARDNESS_H_
#define FAIRAGG_HARDNESS_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairagg/core.h"

namespace fairagg {

// CNF formula; literals are +v (positive) or -v (negated), variables
// 1-based. A (3,3) formula has at most three literals per clause and at most
// three occurrences of each variable across the whole formula.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// Parses DIMACS cnf text ("p cnf <vars> <clauses>" header, clauses
// terminated by 0). Throws MalformedFormula on syntax or range errors.
CnfFormula ParseDimacs(const std::string& text);

// Throws MalformedFormula unless the formula is (3,3) and m <= 3n.
void Check33Invariants(const CnfFormula& formula);

// Bipartite fairness-constrained matching instance: a perfect matching of
// left vertices V onto right vertices W is fair when, for every color class,
// the number of its left vertices matched into the designated subset Z of W
// lies within [alpha * |Z|, beta * |Z|]. The decision problem asks for a
// fair perfect matching of total weight >= target.
struct FairMatchingInstance {
  int size = 0;                                    // |V| = |W|
  std::vector<std::vector<std::int64_t>> weight;   // weight[v][w]
  std::vector<char> in_z;                          // right vertex in Z?
  std::vector<int> color_of;                       // left vertex -> color
  int num_colors = 0;
  std::vector<Rational> alpha;                     // per color
  std::vector<Rational> beta;
  std::int64_t target = 0;
  std::vector<std::string> left_label;
  std::vector<std::string> right_label;

  int z_size() const;
};

// Builds the fair-matching instance whose fair perfect matchings of value
// >= 3n + m correspond exactly to satisfying assignments. Per variable i the
// left side carries six vertices (true/false copies for occurrence slots
// 1..3, colored per slot) and the right side carries three selector vertices
// in Z whose weight-1 edges encode "all-true" or "all-false" consistency;
// each clause contributes one right vertex outside Z with a weight-1 edge
// from the literal copy of each of its occurrences. Dummies pad |W| to |V| =
// 6n, and every color must place exactly one vertex into Z (alpha = beta =
// 1/(3n)).
FairMatchingInstance Reduce33Sat(const CnfFormula& formula);

enum class SatResult { kSat, kUnsat };

// Maximum value over fair perfect matchings, valid only for instances built
// by Reduce33Sat: weight-0 edges are complete off the gadget, so the maximum
// equals the largest weight-1 matching whose Z-placements use pairwise
// distinct colors. Stops early once stop_at is reached (pass <= 0 to
// disable).
std::int64_t MaxFairMatchingValueOnReduction(
    const FairMatchingInstance& instance, std::int64_t stop_at);

// Decides satisfiability of a (3,3) formula through the matching reduction.
// Guarded: throws TooLarge when num_vars exceeds max_vars (the reduction
// instance grows as 6n).
SatResult Decide33SatViaMatching(const CnfFormula& formula, int max_vars = 3);

nlohmann::ordered_json ReductionToJson(const FairMatchingInstance& instance);

}  // namespace fairagg

#endif  // FAIRAGG_HARDNESS_H_
