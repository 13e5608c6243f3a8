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

#include "fairagg/metrics.h"

#include <algorithm>
#include <cstdlib>

namespace fairagg {

namespace {

void RequireSameSize(int a, int b) {
  if (a != b) throw DimensionMismatch("rankings have different sizes");
}

// Counts inversions of values[lo..hi) by merge sort.
std::int64_t CountInversions(std::vector<int>& values, std::vector<int>& tmp,
                             int lo, int hi) {
  if (hi - lo <= 1) return 0;
  const int mid = (lo + hi) / 2;
  std::int64_t count = CountInversions(values, tmp, lo, mid) +
                       CountInversions(values, tmp, mid, hi);
  int i = lo, j = mid, out = lo;
  while (i < mid && j < hi) {
    if (values[i] <= values[j]) {
      tmp[out++] = values[i++];
    } else {
      count += mid - i;
      tmp[out++] = values[j++];
    }
  }
  while (i < mid) tmp[out++] = values[i++];
  while (j < hi) tmp[out++] = values[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, values.begin() + lo);
  return count;
}

}  // namespace

std::int64_t Footrule(const Ranking& p, const Ranking& q) {
  RequireSameSize(p.d(), q.d());
  std::int64_t total = 0;
  for (int c = 0; c < p.d(); ++c) {
    total += std::abs(p.RankOf(c) - q.RankOf(c));
  }
  return total;
}

std::int64_t FootruleTopK(const Ranking& sigma, const TopKList& tau) {
  RequireSameSize(sigma.d(), tau.d());
  if (tau.side() != Side::kTop) {
    throw WrongSide("footrule against a bottom list");
  }
  std::int64_t total = 0;
  for (int c = 0; c < sigma.d(); ++c) {
    const int target = tau.Contains(c) ? tau.PositionOf(c) : tau.k() + 1;
    total += std::abs(sigma.RankOf(c) - target);
  }
  return total;
}

std::int64_t KendallTau(const Ranking& p, const Ranking& q) {
  RequireSameSize(p.d(), q.d());
  const int d = p.d();
  // Walk candidates in p's order and count inversions of their q-ranks.
  std::vector<int> by_p(d);
  for (int c = 0; c < d; ++c) by_p[p.RankOf(c) - 1] = q.RankOf(c);
  std::vector<int> tmp(d);
  return CountInversions(by_p, tmp, 0, d);
}

std::int64_t KendallTauQuadratic(const Ranking& p, const Ranking& q) {
  RequireSameSize(p.d(), q.d());
  std::int64_t count = 0;
  for (int a = 0; a < p.d(); ++a) {
    for (int b = a + 1; b < p.d(); ++b) {
      const bool p_order = p.RankOf(a) < p.RankOf(b);
      const bool q_order = q.RankOf(a) < q.RankOf(b);
      if (p_order != q_order) ++count;
    }
  }
  return count;
}

std::int64_t Objective(std::span<const Ranking> rankings,
                       const Ranking& sigma) {
  std::int64_t total = 0;
  for (const Ranking& pi : rankings) total += Footrule(sigma, pi);
  return total;
}

std::int64_t Objective(std::span<const Ranking> rankings,
                       const TopKList& tau) {
  std::int64_t total = 0;
  for (const Ranking& pi : rankings) total += FootruleTopK(pi, tau);
  return total;
}

std::int64_t KendallObjective(std::span<const Ranking> rankings,
                              const Ranking& sigma) {
  std::int64_t total = 0;
  for (const Ranking& pi : rankings) total += KendallTau(sigma, pi);
  return total;
}

std::int64_t DirectionalObjective(std::span<const Ranking> rankings,
                                  const Ranking& sigma, Direction direction,
                                  const std::vector<int>& domain) {
  std::int64_t total = 0;
  for (const Ranking& pi : rankings) {
    RequireSameSize(sigma.d(), pi.d());
    for (int c : domain) {
      if (c < 0 || c >= sigma.d()) {
        throw DimensionMismatch("domain candidate out of range");
      }
      const int moved = sigma.RankOf(c) - pi.RankOf(c);
      if (direction == Direction::kLeftward && moved < 0) total += -moved;
      if (direction == Direction::kRightward && moved > 0) total += moved;
    }
  }
  return 2 * total;
}

}  // namespace fairagg
