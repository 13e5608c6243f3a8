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

#include "fairagg/synthetic.h"

#include <cmath>
#include <numeric>
#include <utility>

namespace fairagg {

SyntheticData GenSynthetic(const SyntheticSpec& spec) {
  if (spec.d < 1 || spec.n < 1 || spec.g < 1 || spec.g > spec.d) {
    throw DimensionMismatch("synthetic spec needs 1 <= g <= d and n >= 1");
  }
  if (spec.theta < 0.0) {
    throw DimensionMismatch("synthetic spec needs theta >= 0");
  }

  SyntheticData data;
  data.groups.d = spec.d;
  data.groups.g = spec.g;
  data.groups.group_of.resize(spec.d);
  for (int c = 0; c < spec.d; ++c) data.groups.group_of[c] = c % spec.g;

  Rng rng(spec.seed);
  std::vector<int> order(spec.d);
  std::iota(order.begin(), order.end(), 0);

  std::vector<int> center;
  if (spec.model == RankingModel::kMallows) {
    rng.Shuffle(order);
    center = order;
  }

  const int swaps =
      static_cast<int>(std::llround(spec.theta * static_cast<double>(spec.d)));
  for (int i = 0; i < spec.n; ++i) {
    if (spec.model == RankingModel::kUniform) {
      rng.Shuffle(order);
    } else {
      order = center;
      for (int s = 0; s < swaps; ++s) {
        if (spec.d < 2) break;
        const int p = rng.Below(spec.d - 1);
        std::swap(order[p], order[p + 1]);
      }
    }
    data.rankings.push_back(Ranking::FromOrder(order));
  }
  return data;
}

}  // namespace fairagg
