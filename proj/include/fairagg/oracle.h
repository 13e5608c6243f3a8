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

#ifndef FAIRAGG_ORACLE_H_
#define FAIRAGG_ORACLE_H_

#include <cstdint>
#include <optional>

#include "fairagg/core.h"
#include "fairagg/hardness.h"
#include "fairagg/metrics.h"

namespace fairagg {

enum class Metric { kFootrule, kKendall };

struct FullOptimum {
  Ranking ranking;
  std::int64_t objective = 0;
};

// Exhaustive minimum of the chosen objective over all fair full rankings.
// Deliberately direct: enumerates every permutation in lexicographic rank
// order and checks fairness by counting, sharing no logic with the solvers.
// Returns nullopt when no ranking is fair; throws TooLarge past max_d.
std::optional<FullOptimum> BruteFairFullOpt(const Instance& inst,
                                            Metric metric, int max_d = 9);

struct TopKOptimum {
  TopKList list;
  std::int64_t objective = 0;
};

// Exhaustive minimum of the generalized top-k footrule objective over all
// fair top-k lists, enumerated in lexicographic (position 1, position 2,
// ...) candidate order. Returns nullopt when no list is fair.
std::optional<TopKOptimum> BruteFairTopKOpt(const Instance& inst,
                                            int max_d = 9);

struct MatchingOptimum {
  std::vector<int> right_of_left;
  std::int64_t value = 0;
};

// Exhaustive maximum-value fair perfect matching over all |V|! matchings.
// Returns nullopt when no perfect matching is fair.
std::optional<MatchingOptimum> BruteFairMatching(
    const FairMatchingInstance& instance, int max_size = 9);

}  // namespace fairagg

#endif  // FAIRAGG_ORACLE_H_
