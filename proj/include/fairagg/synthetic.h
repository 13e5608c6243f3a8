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

#ifndef FAIRAGG_SYNTHETIC_H_
#define FAIRAGG_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <vector>

#include "fairagg/core.h"

namespace fairagg {

// Deterministic random source: a fixed-algorithm engine plus hand-rolled
// bounded draws, so the same seed yields the same bytes on every platform
// and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, n), n >= 1.
  int Below(int n) {
    return static_cast<int>(Next() % static_cast<std::uint64_t>(n));
  }

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (int i = static_cast<int>(values.size()) - 1; i > 0; --i) {
      std::swap(values[i], values[Below(i + 1)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class RankingModel { kUniform, kMallows };

struct SyntheticSpec {
  int d = 0;
  int n = 0;
  int g = 0;
  std::uint64_t seed = 0;
  RankingModel model = RankingModel::kUniform;
  // Mallows-style dispersion: each ranking applies round(theta * d) random
  // adjacent swaps to a common random center.
  double theta = 0.0;
};

struct SyntheticData {
  std::vector<Ranking> rankings;
  GroupAssignment groups;
};

// Candidate c joins group c mod g; rankings are drawn from the configured
// model. Identical spec (seed included) -> identical data.
SyntheticData GenSynthetic(const SyntheticSpec& spec);

}  // namespace fairagg

#endif  // FAIRAGG_SYNTHETIC_H_
