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

#ifndef FAIRAGG_CORE_H_
#define FAIRAGG_CORE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fairagg {

// Structured error hierarchy. Infeasibility and guard breaches are
// distinguished so the CLI can map them to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InfeasibleBounds : public Error {
 public:
  using Error::Error;
};

class WrongSide : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class EnumerationCapExceeded : public Error {
 public:
  using Error::Error;
};

class MalformedFormula : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Exact nonnegative rational, normalized, denominator > 0. Fairness fractions
// are ingested as decimal strings and kept exact; floors and ceilings of
// alpha*k / beta*k are computed in integer arithmetic.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "0.3", ".5", "1", "1.0", and "3/10".
  static Rational FromString(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // floor(this * k) and ceil(this * k) for k >= 0, exactly.
  std::int64_t FloorTimes(std::int64_t k) const;
  std::int64_t CeilTimes(std::int64_t k) const;

  // Sign of this * k - value, without overflow at the scales used here.
  int CompareTimes(std::int64_t k, std::int64_t value) const;

  double ToDouble() const;
  std::string ToString() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <= b.num_ * a.den_;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

// A full ranking of d candidates: rank_of[c] is the rank (1..d) of candidate
// c (0-based ids). Construction does not enforce bijectivity; invalid data is
// reported by ValidateInstance rather than faulted, so raw vectors can be
// inspected. All algorithms assume IsValidPermutation().
class Ranking {
 public:
  explicit Ranking(std::vector<int> rank_of) : rank_of_(std::move(rank_of)) {}

  static Ranking Identity(int d);
  // order[p] is the candidate at rank p+1.
  static Ranking FromOrder(const std::vector<int>& order);

  int d() const { return static_cast<int>(rank_of_.size()); }
  int RankOf(int candidate) const { return rank_of_[candidate]; }
  const std::vector<int>& ranks() const { return rank_of_; }
  std::vector<int> Order() const;

  bool IsValidPermutation() const;

  friend bool operator==(const Ranking& a, const Ranking& b) {
    return a.rank_of_ == b.rank_of_;
  }

 private:
  std::vector<int> rank_of_;
};

enum class Side { kTop, kBottom };

// A partial ranking placing k of d candidates into contiguous positions:
// 1..k for a top list, d-k+1..d for a bottom list.
class TopKList {
 public:
  TopKList(int d, Side side, int k);

  void Place(int candidate, int position);

  int d() const { return d_; }
  int k() const { return k_; }
  Side side() const { return side_; }
  int FirstPosition() const { return side_ == Side::kTop ? 1 : d_ - k_ + 1; }
  int LastPosition() const { return side_ == Side::kTop ? k_ : d_; }

  bool Contains(int candidate) const { return pos_of_[candidate] != 0; }
  int PositionOf(int candidate) const;
  // (candidate, position) pairs sorted by position.
  std::vector<std::pair<int, int>> Entries() const;
  int PlacedCount() const { return placed_; }

  friend bool operator==(const TopKList& a, const TopKList& b) {
    return a.d_ == b.d_ && a.side_ == b.side_ && a.k_ == b.k_ &&
           a.pos_of_ == b.pos_of_;
  }

 private:
  int d_;
  Side side_;
  int k_;
  int placed_ = 0;
  std::vector<int> pos_of_;  // 0 = unplaced
};

// Partition of candidates into groups 0..g-1.
struct GroupAssignment {
  int d = 0;
  int g = 0;
  std::vector<int> group_of;

  std::vector<int> GroupSizes() const;
};

// Per-group fairness fractions for the top-k window.
struct FairnessSpec {
  int k = 0;
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
};

// Integer per-group occupancy bounds on a window of k contiguous positions
// (top window 1..k or bottom window d-k+1..d).
struct CountBounds {
  Side side = Side::kTop;
  int k = 0;
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> upper;

  int num_groups() const { return static_cast<int>(lower.size()); }
};

struct Instance {
  std::vector<Ranking> rankings;
  GroupAssignment groups;
  FairnessSpec fairness;

  int d() const { return groups.d; }
  int n() const { return static_cast<int>(rankings.size()); }
};

struct ValidationOptions {
  bool allow_empty_groups = false;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Reports every violated invariant; violations are data, not faults.
ValidationReport ValidateInstance(const Instance& inst,
                                  const ValidationOptions& options = {});

// lower_a = floor(alpha_a * k), upper_a = ceil(beta_a * k), on the top-k
// window. Throws InfeasibleBounds when the derived bounds cannot be met.
CountBounds DeriveTopKBounds(const FairnessSpec& fairness,
                             const GroupAssignment& groups);

// Equivalent bounds on the bottom d-k window: lower_a = max(0, |G_a| -
// ceil(beta_a * k)), upper_a = |G_a| - floor(alpha_a * k).
CountBounds DeriveComplementBounds(const FairnessSpec& fairness,
                                   const GroupAssignment& groups);

// True iff every group's occupancy of the bounds' window lies within
// [lower_a, upper_a].
bool CheckFairness(const Ranking& subject, const CountBounds& bounds,
                   const GroupAssignment& groups);
bool CheckFairness(const TopKList& subject, const CountBounds& bounds,
                   const GroupAssignment& groups);

}  // namespace fairagg

#endif  // FAIRAGG_CORE_H_
