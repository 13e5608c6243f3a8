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

#ifndef FAIRAGG_METRICS_H_
#define FAIRAGG_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fairagg/core.h"

namespace fairagg {

// Footrule distance: sum over candidates of |p(c) - q(c)|.
std::int64_t Footrule(const Ranking& p, const Ranking& q);

// Footrule distance between a full ranking and a top-k list: placed
// candidates contribute |sigma(c) - tau(c)|; candidates missing from tau are
// charged as if tau put them at rank k+1.
std::int64_t FootruleTopK(const Ranking& sigma, const TopKList& tau);

// Number of discordant candidate pairs, O(d log d).
std::int64_t KendallTau(const Ranking& p, const Ranking& q);

// Quadratic pair-enumeration reference for KendallTau.
std::int64_t KendallTauQuadratic(const Ranking& p, const Ranking& q);

// Sum of distances from sigma (or tau) to every ranking in rankings.
std::int64_t Objective(std::span<const Ranking> rankings,
                       const Ranking& sigma);
std::int64_t Objective(std::span<const Ranking> rankings, const TopKList& tau);
std::int64_t KendallObjective(std::span<const Ranking> rankings,
                              const Ranking& sigma);

enum class Direction { kLeftward, kRightward };

// Twice the total displacement of the domain's candidates in the given
// direction: 2 * sum over inputs pi and candidates c in domain of
// (pi(c) - sigma(c)) when sigma moves c leftward (sigma(c) < pi(c)), or of
// (sigma(c) - pi(c)) when sigma moves c rightward. The leftward and
// rightward totals over the full candidate set coincide and equal the
// footrule objective.
std::int64_t DirectionalObjective(std::span<const Ranking> rankings,
                                  const Ranking& sigma, Direction direction,
                                  const std::vector<int>& domain);

}  // namespace fairagg

#endif  // FAIRAGG_METRICS_H_
