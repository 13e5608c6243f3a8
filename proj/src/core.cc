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

#include "fairagg/core.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace fairagg {

namespace {

std::int64_t Gcd(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num < 0) throw ParseError("negative rational not supported");
  std::int64_t g = num == 0 ? den : Gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::FromString(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (a.empty() || b.empty() ||
        a.find_first_not_of("0123456789") != std::string::npos ||
        b.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad rational literal: " + text);
    }
    return Rational(std::stoll(a), std::stoll(b));
  }
  auto dot = s.find('.');
  std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw ParseError("bad rational literal: " + text);
  if (whole.find_first_not_of("0123456789") != std::string::npos ||
      frac.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("bad rational literal: " + text);
  }
  if (frac.size() > 15) throw ParseError("rational literal too precise: " + text);
  std::int64_t den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::int64_t num = (whole.empty() ? 0 : std::stoll(whole)) * den +
                     (frac.empty() ? 0 : std::stoll(frac));
  return Rational(num, den);
}

std::int64_t Rational::FloorTimes(std::int64_t k) const {
  return num_ * k / den_;
}

std::int64_t Rational::CeilTimes(std::int64_t k) const {
  return (num_ * k + den_ - 1) / den_;
}

int Rational::CompareTimes(std::int64_t k, std::int64_t value) const {
  const std::int64_t lhs = num_ * k;
  const std::int64_t rhs = value * den_;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

double Rational::ToDouble() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::ToString() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Ranking Ranking::Identity(int d) {
  std::vector<int> ranks(d);
  std::iota(ranks.begin(), ranks.end(), 1);
  return Ranking(std::move(ranks));
}

Ranking Ranking::FromOrder(const std::vector<int>& order) {
  const int d = static_cast<int>(order.size());
  std::vector<int> ranks(d, 0);
  for (int p = 0; p < d; ++p) {
    const int c = order[p];
    if (c < 0 || c >= d) throw DimensionMismatch("order entry out of range");
    ranks[c] = p + 1;
  }
  return Ranking(std::move(ranks));
}

std::vector<int> Ranking::Order() const {
  std::vector<int> order(rank_of_.size(), -1);
  for (int c = 0; c < d(); ++c) {
    const int r = rank_of_[c];
    if (r < 1 || r > d()) throw DimensionMismatch("rank out of range");
    order[r - 1] = c;
  }
  return order;
}

bool Ranking::IsValidPermutation() const {
  std::vector<bool> seen(rank_of_.size() + 1, false);
  for (int r : rank_of_) {
    if (r < 1 || r > d() || seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

TopKList::TopKList(int d, Side side, int k)
    : d_(d), side_(side), k_(k), pos_of_(d, 0) {
  if (k < 0 || k > d) throw DimensionMismatch("list size out of range");
}

void TopKList::Place(int candidate, int position) {
  if (candidate < 0 || candidate >= d_) {
    throw DimensionMismatch("candidate out of range");
  }
  if (position < FirstPosition() || position > LastPosition()) {
    throw WrongSide("position outside the list window");
  }
  if (pos_of_[candidate] != 0) {
    throw DimensionMismatch("candidate placed twice");
  }
  pos_of_[candidate] = position;
  ++placed_;
}

int TopKList::PositionOf(int candidate) const {
  const int p = pos_of_[candidate];
  if (p == 0) throw DimensionMismatch("candidate not in list");
  return p;
}

std::vector<std::pair<int, int>> TopKList::Entries() const {
  std::vector<std::pair<int, int>> entries;
  entries.reserve(placed_);
  for (int c = 0; c < d_; ++c) {
    if (pos_of_[c] != 0) entries.emplace_back(c, pos_of_[c]);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return entries;
}

std::vector<int> GroupAssignment::GroupSizes() const {
  std::vector<int> sizes(g, 0);
  for (int c = 0; c < d; ++c) {
    if (group_of[c] >= 0 && group_of[c] < g) ++sizes[group_of[c]];
  }
  return sizes;
}

namespace {

void ValidateRanking(const Ranking& ranking, int index, int d,
                     ValidationReport* report) {
  if (ranking.d() != d) {
    std::ostringstream msg;
    msg << "ranking " << index << ": has " << ranking.d()
        << " entries, expected " << d;
    report->violations.push_back(msg.str());
    return;
  }
  std::vector<int> count(d + 1, 0);
  for (int c = 0; c < d; ++c) {
    const int r = ranking.RankOf(c);
    if (r < 1 || r > d) {
      std::ostringstream msg;
      msg << "ranking " << index << ": candidate " << c << " has rank " << r
          << " outside 1.." << d;
      report->violations.push_back(msg.str());
    } else {
      ++count[r];
    }
  }
  for (int r = 1; r <= d; ++r) {
    if (count[r] > 1) {
      std::ostringstream msg;
      msg << "ranking " << index << ": rank " << r << " duplicated";
      report->violations.push_back(msg.str());
    }
  }
}

}  // namespace

ValidationReport ValidateInstance(const Instance& inst,
                                  const ValidationOptions& options) {
  ValidationReport report;
  const int d = inst.groups.d;
  const int g = inst.groups.g;

  if (inst.rankings.empty()) {
    report.violations.push_back("instance has no rankings");
  }
  if (d <= 0) report.violations.push_back("instance has no candidates");
  if (g <= 0) report.violations.push_back("instance has no groups");
  if (static_cast<int>(inst.groups.group_of.size()) != d) {
    report.violations.push_back("group assignment length differs from d");
  }

  bool groups_ok = d > 0 && g > 0 &&
                   static_cast<int>(inst.groups.group_of.size()) == d;
  if (groups_ok) {
    for (int c = 0; c < d; ++c) {
      const int a = inst.groups.group_of[c];
      if (a < 0 || a >= g) {
        std::ostringstream msg;
        msg << "candidate " << c << ": group " << a << " outside 0.." << g - 1;
        report.violations.push_back(msg.str());
        groups_ok = false;
      }
    }
  }
  if (groups_ok && !options.allow_empty_groups) {
    const std::vector<int> sizes = inst.groups.GroupSizes();
    for (int a = 0; a < g; ++a) {
      if (sizes[a] == 0) {
        std::ostringstream msg;
        msg << "group " << a << " is empty";
        report.violations.push_back(msg.str());
      }
    }
  }

  for (int i = 0; i < inst.n(); ++i) {
    ValidateRanking(inst.rankings[i], i, d, &report);
  }

  const FairnessSpec& f = inst.fairness;
  bool fairness_ok = true;
  if (f.k < 1 || f.k > d) {
    std::ostringstream msg;
    msg << "k = " << f.k << " outside 1.." << d;
    report.violations.push_back(msg.str());
    fairness_ok = false;
  }
  if (static_cast<int>(f.alpha.size()) != g ||
      static_cast<int>(f.beta.size()) != g) {
    report.violations.push_back("fairness fractions length differs from g");
    fairness_ok = false;
  }
  if (fairness_ok) {
    const Rational one(1, 1);
    for (int a = 0; a < g; ++a) {
      if (one < f.alpha[a] || one < f.beta[a]) {
        std::ostringstream msg;
        msg << "group " << a << ": fraction above 1";
        report.violations.push_back(msg.str());
        fairness_ok = false;
      }
      if (f.beta[a] < f.alpha[a]) {
        std::ostringstream msg;
        msg << "group " << a << ": alpha " << f.alpha[a].ToString()
            << " exceeds beta " << f.beta[a].ToString();
        report.violations.push_back(msg.str());
        fairness_ok = false;
      }
    }
  }
  if (fairness_ok && groups_ok) {
    try {
      DeriveTopKBounds(f, inst.groups);
    } catch (const InfeasibleBounds& e) {
      report.violations.push_back(e.what());
    }
  }

  report.ok = report.violations.empty();
  return report;
}

namespace {

// Shared feasibility check: a window of k positions must be fillable with
// per-group occupancies in [lower_a, min(upper_a, |G_a|)].
void CheckBoundsFeasible(const CountBounds& bounds,
                         const std::vector<int>& sizes) {
  std::int64_t sum_lower = 0;
  std::int64_t sum_upper_capped = 0;
  for (int a = 0; a < bounds.num_groups(); ++a) {
    if (bounds.lower[a] > sizes[a]) {
      std::ostringstream msg;
      msg << "group " << a << ": lower bound " << bounds.lower[a]
          << " exceeds group size " << sizes[a];
      throw InfeasibleBounds(msg.str());
    }
    sum_lower += bounds.lower[a];
    sum_upper_capped += std::min<std::int64_t>(bounds.upper[a], sizes[a]);
  }
  if (sum_lower > bounds.k) {
    std::ostringstream msg;
    msg << "lower bounds sum to " << sum_lower << " > window size "
        << bounds.k;
    throw InfeasibleBounds(msg.str());
  }
  if (sum_upper_capped < bounds.k) {
    std::ostringstream msg;
    msg << "upper bounds cap occupancy at " << sum_upper_capped
        << " < window size " << bounds.k;
    throw InfeasibleBounds(msg.str());
  }
}

}  // namespace

CountBounds DeriveTopKBounds(const FairnessSpec& fairness,
                             const GroupAssignment& groups) {
  if (static_cast<int>(fairness.alpha.size()) != groups.g ||
      static_cast<int>(fairness.beta.size()) != groups.g) {
    throw DimensionMismatch("fairness fractions length differs from g");
  }
  CountBounds bounds;
  bounds.side = Side::kTop;
  bounds.k = fairness.k;
  bounds.lower.resize(groups.g);
  bounds.upper.resize(groups.g);
  for (int a = 0; a < groups.g; ++a) {
    bounds.lower[a] = fairness.alpha[a].FloorTimes(fairness.k);
    bounds.upper[a] = fairness.beta[a].CeilTimes(fairness.k);
  }
  CheckBoundsFeasible(bounds, groups.GroupSizes());
  return bounds;
}

CountBounds DeriveComplementBounds(const FairnessSpec& fairness,
                                   const GroupAssignment& groups) {
  const CountBounds top = DeriveTopKBounds(fairness, groups);
  const std::vector<int> sizes = groups.GroupSizes();
  CountBounds bounds;
  bounds.side = Side::kBottom;
  bounds.k = groups.d - fairness.k;
  bounds.lower.resize(groups.g);
  bounds.upper.resize(groups.g);
  for (int a = 0; a < groups.g; ++a) {
    bounds.lower[a] = std::max<std::int64_t>(0, sizes[a] - top.upper[a]);
    bounds.upper[a] = sizes[a] - top.lower[a];
  }
  CheckBoundsFeasible(bounds, sizes);
  return bounds;
}

namespace {

bool CountsWithinBounds(const std::vector<std::int64_t>& counts,
                        const CountBounds& bounds) {
  for (int a = 0; a < bounds.num_groups(); ++a) {
    if (counts[a] < bounds.lower[a] || counts[a] > bounds.upper[a]) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool CheckFairness(const Ranking& subject, const CountBounds& bounds,
                   const GroupAssignment& groups) {
  if (subject.d() != groups.d) {
    throw DimensionMismatch("ranking size differs from group assignment");
  }
  if (bounds.num_groups() != groups.g) {
    throw DimensionMismatch("bounds group count differs from g");
  }
  const int d = groups.d;
  const int lo = bounds.side == Side::kTop ? 1 : d - bounds.k + 1;
  const int hi = bounds.side == Side::kTop ? bounds.k : d;
  std::vector<std::int64_t> counts(groups.g, 0);
  for (int c = 0; c < d; ++c) {
    const int r = subject.RankOf(c);
    if (r >= lo && r <= hi) ++counts[groups.group_of[c]];
  }
  return CountsWithinBounds(counts, bounds);
}

bool CheckFairness(const TopKList& subject, const CountBounds& bounds,
                   const GroupAssignment& groups) {
  if (subject.d() != groups.d) {
    throw DimensionMismatch("list size differs from group assignment");
  }
  if (bounds.num_groups() != groups.g) {
    throw DimensionMismatch("bounds group count differs from g");
  }
  if (subject.side() != bounds.side) {
    throw WrongSide("list side differs from bounds side");
  }
  if (subject.k() != bounds.k) {
    throw DimensionMismatch("list size differs from bounds window");
  }
  std::vector<std::int64_t> counts(groups.g, 0);
  for (const auto& [candidate, position] : subject.Entries()) {
    (void)position;
    ++counts[groups.group_of[candidate]];
  }
  return CountsWithinBounds(counts, bounds);
}

}  // namespace fairagg
