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

#include "fairagg/oracle.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fairagg {

namespace {

void GuardSize(int actual, int limit, const char* what) {
  if (actual > limit) {
    std::ostringstream msg;
    msg << what << " of size " << actual << " exceeds brute-force guard "
        << limit;
    throw TooLarge(msg.str());
  }
}

// Raw floor/ceil window bounds, taken directly from the fairness fractions
// with no feasibility screening; the enumeration discovers infeasibility by
// finding nothing.
struct RawBounds {
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> upper;
};

RawBounds RawTopKBounds(const FairnessSpec& fairness) {
  RawBounds bounds;
  for (const Rational& a : fairness.alpha) {
    bounds.lower.push_back(a.FloorTimes(fairness.k));
  }
  for (const Rational& b : fairness.beta) {
    bounds.upper.push_back(b.CeilTimes(fairness.k));
  }
  return bounds;
}

bool TopWindowFair(const Ranking& sigma, int k, const RawBounds& bounds,
                   const GroupAssignment& groups) {
  std::vector<std::int64_t> counts(groups.g, 0);
  for (int c = 0; c < groups.d; ++c) {
    if (sigma.RankOf(c) <= k) ++counts[groups.group_of[c]];
  }
  for (int a = 0; a < groups.g; ++a) {
    if (counts[a] < bounds.lower[a] || counts[a] > bounds.upper[a]) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<FullOptimum> BruteFairFullOpt(const Instance& inst,
                                            Metric metric, int max_d) {
  const int d = inst.d();
  GuardSize(d, max_d, "full-ranking enumeration");
  if (inst.rankings.empty()) throw DimensionMismatch("no input rankings");
  const RawBounds bounds = RawTopKBounds(inst.fairness);
  if (static_cast<int>(bounds.lower.size()) != inst.groups.g ||
      static_cast<int>(bounds.upper.size()) != inst.groups.g) {
    throw DimensionMismatch("fairness fractions length differs from g");
  }

  std::vector<int> rank_of(d);
  std::iota(rank_of.begin(), rank_of.end(), 1);
  std::optional<FullOptimum> best;
  do {
    const Ranking sigma{rank_of};
    if (!TopWindowFair(sigma, inst.fairness.k, bounds, inst.groups)) continue;
    const std::int64_t objective =
        metric == Metric::kFootrule
            ? Objective(inst.rankings, sigma)
            : KendallObjective(inst.rankings, sigma);
    if (!best.has_value() || objective < best->objective) {
      best = FullOptimum{sigma, objective};
    }
  } while (std::next_permutation(rank_of.begin(), rank_of.end()));
  return best;
}

std::optional<TopKOptimum> BruteFairTopKOpt(const Instance& inst, int max_d) {
  const int d = inst.d();
  const int k = inst.fairness.k;
  GuardSize(d, max_d, "top-k enumeration");
  if (inst.rankings.empty()) throw DimensionMismatch("no input rankings");
  if (k < 1 || k > d) throw DimensionMismatch("k out of range");
  const RawBounds bounds = RawTopKBounds(inst.fairness);

  std::optional<TopKOptimum> best;
  std::vector<int> at_position(k, -1);
  std::vector<char> used(d, 0);
  const auto evaluate = [&]() {
    std::vector<std::int64_t> counts(inst.groups.g, 0);
    for (int c : at_position) ++counts[inst.groups.group_of[c]];
    for (int a = 0; a < inst.groups.g; ++a) {
      if (counts[a] < bounds.lower[a] || counts[a] > bounds.upper[a]) return;
    }
    TopKList tau(d, Side::kTop, k);
    for (int p = 0; p < k; ++p) tau.Place(at_position[p], p + 1);
    const std::int64_t objective = Objective(inst.rankings, tau);
    if (!best.has_value() || objective < best->objective) {
      best = TopKOptimum{tau, objective};
    }
  };
  const auto enumerate = [&](auto&& self, int position) -> void {
    if (position == k) {
      evaluate();
      return;
    }
    for (int c = 0; c < d; ++c) {
      if (used[c]) continue;
      used[c] = 1;
      at_position[position] = c;
      self(self, position + 1);
      used[c] = 0;
    }
  };
  enumerate(enumerate, 0);
  return best;
}

std::optional<MatchingOptimum> BruteFairMatching(
    const FairMatchingInstance& instance, int max_size) {
  GuardSize(instance.size, max_size, "matching enumeration");
  const int size = instance.size;
  const int z = instance.z_size();

  std::vector<int> right_of_left(size);
  std::iota(right_of_left.begin(), right_of_left.end(), 0);
  std::optional<MatchingOptimum> best;
  do {
    std::vector<std::int64_t> z_counts(instance.num_colors, 0);
    for (int v = 0; v < size; ++v) {
      if (instance.in_z[right_of_left[v]]) ++z_counts[instance.color_of[v]];
    }
    bool fair = true;
    for (int color = 0; color < instance.num_colors && fair; ++color) {
      // alpha * |Z| <= count <= beta * |Z|, compared exactly.
      if (instance.alpha[color].CompareTimes(z, z_counts[color]) > 0 ||
          instance.beta[color].CompareTimes(z, z_counts[color]) < 0) {
        fair = false;
      }
    }
    if (!fair) continue;
    std::int64_t value = 0;
    for (int v = 0; v < size; ++v) value += instance.weight[v][right_of_left[v]];
    if (!best.has_value() || value > best->value) {
      best = MatchingOptimum{right_of_left, value};
    }
  } while (std::next_permutation(right_of_left.begin(), right_of_left.end()));
  return best;
}

}  // namespace fairagg
