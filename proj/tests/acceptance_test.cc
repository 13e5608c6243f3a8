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
//
// Release gate: one measured verdict per shipping claim, printed as a
// PASS/FAIL line. Every tolerance is pinned here as a named constant; the
// whole battery runs twice and the two transcripts must agree byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairagg/core.h"
#include "fairagg/hardness.h"
#include "fairagg/metrics.h"
#include "fairagg/oracle.h"
#include "fairagg/solvers.h"
#include "fairagg/synthetic.h"
#include "support.h"

namespace fairagg {
namespace {

using testing::BoundsMode;

// --- pinned seeds, sizes, and tolerances -----------------------------------
constexpr std::uint64_t kExactSeed = 411;
constexpr int kExactTrials = 200;
constexpr double kExactBudgetSeconds = 60.0;

constexpr std::uint64_t kSuiteSeed = 20260822;
constexpr int kSuiteSize = 500;
constexpr double kMedianRatioCap = 1.05;

// The baseline comparison runs at the scale of the empirical study the claim
// comes from (dozens of candidates, tens of voters, k = d/2): with a handful
// of candidates the integer objectives quantize so coarsely that a one-unit
// tie-break already exceeds any percentage cap.
constexpr std::uint64_t kBaselineSeed = 3301;
constexpr int kBaselineSuiteSize = 500;
constexpr int kBaselineMinD = 20;
constexpr int kBaselineMaxD = 60;
constexpr int kBaselineMinN = 10;
constexpr int kBaselineMaxN = 25;
constexpr double kBaselineWinShare = 0.95;   // alg3 <= bfi this often
constexpr std::int64_t kExcessNum = 1001;    // and never above bfi by > 0.1%
constexpr std::int64_t kExcessDen = 1000;

constexpr int kKendallTrials = 200;
constexpr std::int64_t kKendallFactor = 4;

constexpr std::uint64_t kMetricSeed = 631;
constexpr int kMetricPairs = 1000;

constexpr std::uint64_t kCompletionSeed = 977;
constexpr int kCompletionTrials = 200;
constexpr std::int64_t kWorkedPlacementCost = 4;

constexpr std::uint64_t kHardnessSeed = 2027;
constexpr int kHardnessSeededTrials = 20;

constexpr std::uint64_t kScaleSeed = 57;
constexpr int kScaleD = 57;
constexpr int kScaleN = 25;
constexpr int kScaleG = 2;
constexpr double kScaleBudgetMs = 5000.0;

struct CriterionResult {
  int number = 0;
  bool pass = false;
  std::string detail;
};

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

Ranking RandomRanking(Rng& rng, int d) {
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  return Ranking::FromOrder(order);
}

std::string FormatRatio(double value) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << value;
  return out.str();
}

// --- criterion 1: the top-k solver is exact --------------------------------
CriterionResult ExactTopK(std::ostream& digest) {
  Rng rng(kExactSeed);
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (int trial = 0; trial < kExactTrials; ++trial) {
    const Instance inst =
        testing::RandomInstance(rng, 2, 7, 5, 3, BoundsMode::kRandomFeasible);
    const CountBounds bounds = DeriveTopKBounds(inst.fairness, inst.groups);
    const TopKSolution exact =
        FairTopKExact(inst.rankings, bounds, inst.groups);
    const std::optional<TopKOptimum> brute = BruteFairTopKOpt(inst);
    if (!brute.has_value() || brute->objective != exact.objective) {
      ++mismatches;
    }
    digest << "c1 " << trial << " " << exact.objective << "\n";
  }
  const double seconds = SecondsSince(start);
  CriterionResult result;
  result.number = 1;
  result.pass = mismatches == 0 && seconds < kExactBudgetSeconds;
  std::ostringstream detail;
  detail << "window solver matched exhaustive search on "
         << (kExactTrials - mismatches) << "/" << kExactTrials
         << " random instances";
  if (seconds >= kExactBudgetSeconds) detail << " (over time budget)";
  result.detail = detail.str();
  return result;
}

// --- criteria 2, 3, 4, 5: approximation quality on the shared suite --------
struct SuiteMeasurement {
  std::int64_t optimum = 0;
  std::int64_t alg3 = 0;
  std::int64_t bfi = 0;
};

std::vector<CriterionResult> ApproximationSuite(std::ostream& digest) {
  const std::vector<Instance> suite =
      testing::SyntheticSuite(kSuiteSeed, kSuiteSize);
  std::vector<SuiteMeasurement> rows;
  rows.reserve(suite.size());
  int missing_optimum = 0;
  for (const Instance& inst : suite) {
    const std::optional<FullOptimum> opt =
        BruteFairFullOpt(inst, Metric::kFootrule);
    if (!opt.has_value()) {
      ++missing_optimum;
      continue;
    }
    SuiteMeasurement row;
    row.optimum = opt->objective;
    row.alg3 = AggregateAlg3(inst).objective;
    row.bfi = BfiAggregate(inst).objective;
    rows.push_back(row);
    digest << "c2345 " << row.optimum << " " << row.alg3 << " " << row.bfi
           << "\n";
  }

  int two_x_violations = 0;
  int bfi_three_x_violations = 0;
  std::vector<double> ratios;
  for (const SuiteMeasurement& row : rows) {
    if (row.alg3 > 2 * row.optimum) ++two_x_violations;
    if (row.bfi > 3 * row.optimum) ++bfi_three_x_violations;
    if (row.optimum > 0) {
      ratios.push_back(static_cast<double>(row.alg3) /
                       static_cast<double>(row.optimum));
    } else {
      ratios.push_back(row.alg3 == 0 ? 1.0 : 10.0);
    }
  }
  std::sort(ratios.begin(), ratios.end());
  const size_t count = ratios.size();
  const double median =
      count == 0 ? 0.0
                 : (count % 2 == 1
                        ? ratios[count / 2]
                        : 0.5 * (ratios[count / 2 - 1] + ratios[count / 2]));

  // Baseline ordering, measured where the claim lives: larger instances
  // with proportional bounds and a half-width window.
  int alg3_wins = 0;
  int hard_excess = 0;
  {
    Rng rng(kBaselineSeed);
    for (int trial = 0; trial < kBaselineSuiteSize; ++trial) {
      SyntheticSpec spec;
      spec.d = kBaselineMinD +
               static_cast<int>(rng.Below(kBaselineMaxD - kBaselineMinD + 1));
      spec.n = kBaselineMinN +
               static_cast<int>(rng.Below(kBaselineMaxN - kBaselineMinN + 1));
      spec.g = 2 + static_cast<int>(rng.Below(2));
      spec.seed = rng.Next();
      const SyntheticData data = GenSynthetic(spec);

      Instance inst;
      inst.rankings = data.rankings;
      inst.groups = data.groups;
      inst.fairness.k = spec.d / 2;
      const std::vector<int> sizes = inst.groups.GroupSizes();
      for (int a = 0; a < inst.groups.g; ++a) {
        inst.fairness.alpha.push_back(Rational(sizes[a], spec.d));
        inst.fairness.beta.push_back(Rational(sizes[a], spec.d));
      }

      const std::int64_t alg3 = AggregateAlg3(inst).objective;
      const std::int64_t bfi = BfiAggregate(inst).objective;
      if (alg3 <= bfi) ++alg3_wins;
      if (alg3 * kExcessDen > bfi * kExcessNum) ++hard_excess;
      digest << "c3 " << trial << " " << alg3 << " " << bfi << "\n";
    }
  }
  const double win_share =
      static_cast<double>(alg3_wins) /
      static_cast<double>(kBaselineSuiteSize);

  std::vector<CriterionResult> results;
  {
    CriterionResult r;
    r.number = 2;
    r.pass = missing_optimum == 0 && two_x_violations == 0 &&
             median <= kMedianRatioCap;
    std::ostringstream detail;
    detail << "best-of-two stayed within 2x of the fair optimum on "
           << rows.size() << "/" << kSuiteSize << " instances ("
           << two_x_violations << " violations), median ratio "
           << FormatRatio(median);
    r.detail = detail.str();
    results.push_back(r);
  }
  {
    CriterionResult r;
    r.number = 3;
    r.pass = win_share >= kBaselineWinShare && hard_excess == 0;
    std::ostringstream detail;
    detail << "best-of-two beat or tied the interpolation baseline on "
           << FormatRatio(100.0 * win_share) << "% of " << kBaselineSuiteSize
           << " study-scale instances (d " << kBaselineMinD << "-"
           << kBaselineMaxD << ", n " << kBaselineMinN << "-" << kBaselineMaxN
           << "), " << hard_excess << " above it by more than 0.1%";
    r.detail = detail.str();
    results.push_back(r);
  }
  {
    CriterionResult r;
    r.number = 4;
    r.pass = bfi_three_x_violations == 0;
    std::ostringstream detail;
    detail << "interpolation baseline stayed within 3x of the fair optimum ("
           << bfi_three_x_violations << " violations)";
    r.detail = detail.str();
    results.push_back(r);
  }
  {
    int kendall_violations = 0;
    const int trials =
        std::min<int>(kKendallTrials, static_cast<int>(suite.size()));
    for (int i = 0; i < trials; ++i) {
      const Instance& inst = suite[i];
      const std::optional<FullOptimum> kendall_opt =
          BruteFairFullOpt(inst, Metric::kKendall);
      if (!kendall_opt.has_value()) {
        ++kendall_violations;
        continue;
      }
      const AggregationResult alg3 = AggregateAlg3(inst);
      const std::int64_t achieved =
          KendallObjective(inst.rankings, alg3.ranking);
      if (achieved > kKendallFactor * kendall_opt->objective) {
        ++kendall_violations;
      }
      digest << "c5 " << i << " " << achieved << " " << kendall_opt->objective
             << "\n";
    }
    CriterionResult r;
    r.number = 5;
    r.pass = kendall_violations == 0;
    std::ostringstream detail;
    detail << "pair-disagreement objective stayed within " << kKendallFactor
           << "x of its fair optimum on " << trials << " instances ("
           << kendall_violations << " violations)";
    r.detail = detail.str();
    results.push_back(r);
  }
  return results;
}

// --- criterion 6: displacement identity and the distance sandwich ----------
CriterionResult MetricProperties(std::ostream& digest) {
  Rng rng(kMetricSeed);
  int sandwich_violations = 0;
  for (int trial = 0; trial < kMetricPairs; ++trial) {
    const int d = 2 + static_cast<int>(rng.Below(39));
    const Ranking p = RandomRanking(rng, d);
    const Ranking q = RandomRanking(rng, d);
    const std::int64_t kendall = KendallTau(p, q);
    const std::int64_t footrule = Footrule(p, q);
    if (!(kendall <= footrule && footrule <= 2 * kendall)) {
      ++sandwich_violations;
    }
    digest << "c6a " << trial << " " << kendall << " " << footrule << "\n";
  }

  int identity_violations = 0;
  for (int trial = 0; trial < kMetricPairs; ++trial) {
    const int d = 2 + static_cast<int>(rng.Below(9));
    const int n = 1 + static_cast<int>(rng.Below(4));
    std::vector<Ranking> rankings;
    for (int i = 0; i < n; ++i) rankings.push_back(RandomRanking(rng, d));
    const Ranking sigma = RandomRanking(rng, d);
    std::vector<int> domain(d);
    std::iota(domain.begin(), domain.end(), 0);
    const std::int64_t leftward =
        DirectionalObjective(rankings, sigma, Direction::kLeftward, domain);
    const std::int64_t rightward =
        DirectionalObjective(rankings, sigma, Direction::kRightward, domain);
    const std::int64_t objective = Objective(rankings, sigma);
    if (leftward != rightward || leftward != objective) {
      ++identity_violations;
    }
    digest << "c6b " << trial << " " << leftward << "\n";
  }

  CriterionResult result;
  result.number = 6;
  result.pass = sandwich_violations == 0 && identity_violations == 0;
  std::ostringstream detail;
  detail << "distance sandwich and displacement identity held on "
         << kMetricPairs << " pairs each (" << sandwich_violations << " + "
         << identity_violations << " violations)";
  result.detail = detail.str();
  return result;
}

// --- criterion 7: completions are optimal placements -----------------------
std::int64_t BruteCompletionMinimum(std::span<const Ranking> rankings,
                                    const TopKList& window) {
  const int d = window.d();
  std::vector<int> free_candidates;
  for (int c = 0; c < d; ++c) {
    if (!window.Contains(c)) free_candidates.push_back(c);
  }
  std::vector<int> free_positions;
  if (window.side() == Side::kTop) {
    for (int p = window.k() + 1; p <= d; ++p) free_positions.push_back(p);
  } else {
    for (int p = 1; p <= d - window.k(); ++p) free_positions.push_back(p);
  }
  const Direction direction = window.side() == Side::kTop
                                  ? Direction::kLeftward
                                  : Direction::kRightward;
  std::int64_t best = -1;
  std::sort(free_candidates.begin(), free_candidates.end());
  do {
    std::int64_t total = 0;
    for (size_t i = 0; i < free_candidates.size(); ++i) {
      total += DirectionalPlacementCost(rankings, free_candidates[i],
                                        free_positions[i], direction);
    }
    if (best < 0 || total < best) best = total;
  } while (std::next_permutation(free_candidates.begin(),
                                 free_candidates.end()));
  return best < 0 ? 0 : best;
}

std::int64_t AchievedCompletionCost(std::span<const Ranking> rankings,
                                    const TopKList& window,
                                    const Ranking& completed) {
  const Direction direction = window.side() == Side::kTop
                                  ? Direction::kLeftward
                                  : Direction::kRightward;
  std::int64_t total = 0;
  for (int c = 0; c < window.d(); ++c) {
    if (window.Contains(c)) continue;
    total +=
        DirectionalPlacementCost(rankings, c, completed.RankOf(c), direction);
  }
  return total;
}

CriterionResult CompletionOptimality(std::ostream& digest) {
  Rng rng(kCompletionSeed);
  int violations = 0;
  for (int trial = 0; trial < kCompletionTrials; ++trial) {
    const Instance inst =
        testing::RandomInstance(rng, 2, 7, 4, 3, BoundsMode::kProportional);
    const bool top_side = trial % 2 == 0;
    const CountBounds bounds =
        top_side ? DeriveTopKBounds(inst.fairness, inst.groups)
                 : DeriveComplementBounds(inst.fairness, inst.groups);
    const Direction window_direction =
        top_side ? Direction::kLeftward : Direction::kRightward;
    const SidedSolution sided = SolveConstrainedSide(
        inst.rankings, bounds, inst.groups, window_direction);
    const Ranking completed = CompleteList(inst.rankings, sided.list);
    bool ok = completed.IsValidPermutation();
    for (const auto& [candidate, position] : sided.list.Entries()) {
      if (completed.RankOf(candidate) != position) ok = false;
    }
    const std::int64_t achieved =
        AchievedCompletionCost(inst.rankings, sided.list, completed);
    const std::int64_t minimum =
        BruteCompletionMinimum(inst.rankings, sided.list);
    if (!ok || achieved != minimum) ++violations;
    digest << "c7 " << trial << " " << achieved << "\n";
  }

  const std::vector<Ranking> three = testing::ThreeVoterRankings();
  const std::int64_t worked =
      DirectionalPlacementCost(three, 2, 4, Direction::kLeftward);
  const bool worked_ok = worked == kWorkedPlacementCost;
  digest << "c7 worked " << worked << "\n";

  CriterionResult result;
  result.number = 7;
  result.pass = violations == 0 && worked_ok;
  std::ostringstream detail;
  detail << "completion matched the brute-force placement minimum on "
         << (kCompletionTrials - violations) << "/" << kCompletionTrials
         << " windows; worked placement cost " << worked << " (want "
         << kWorkedPlacementCost << ")";
  result.detail = detail.str();
  return result;
}

// --- criterion 8: the satisfiability reduction decides correctly -----------
std::vector<std::vector<int>> ClausePatterns(int num_vars) {
  std::vector<int> literals;
  for (int v = 1; v <= num_vars; ++v) {
    literals.push_back(v);
    literals.push_back(-v);
  }
  std::vector<std::vector<int>> patterns = {{}};
  std::vector<int> picked;
  const auto rec = [&](auto&& self, int start) -> void {
    if (!picked.empty()) {
      std::vector<int> clause;
      for (int index : picked) clause.push_back(literals[index]);
      patterns.push_back(clause);
    }
    if (picked.size() == 3) return;
    for (int i = start; i < static_cast<int>(literals.size()); ++i) {
      picked.push_back(i);
      self(self, i);
      picked.pop_back();
    }
  };
  rec(rec, 0);
  return patterns;
}

struct HardnessTally {
  int formulas = 0;
  int disagreements = 0;
  int structure_failures = 0;
};

void CheckFormula(const CnfFormula& formula, HardnessTally& tally,
                  std::ostream& digest) {
  ++tally.formulas;
  const bool truth = testing::TruthTableSat(formula);
  const bool decided =
      Decide33SatViaMatching(formula) == SatResult::kSat;
  if (truth != decided) ++tally.disagreements;

  const FairMatchingInstance reduction = Reduce33Sat(formula);
  const int n = formula.num_vars;
  const int m = static_cast<int>(formula.clauses.size());
  int literal_count = 0;
  for (const auto& clause : formula.clauses) {
    literal_count += static_cast<int>(clause.size());
  }
  std::int64_t unit_edges = 0;
  for (const auto& row : reduction.weight) {
    for (std::int64_t w : row) unit_edges += w;
  }
  const bool shape_ok =
      reduction.size == 6 * n && reduction.target == 3 * n + m &&
      reduction.z_size() == 3 * n && reduction.num_colors == 3 * n &&
      unit_edges == 6 * n + literal_count;
  if (!shape_ok) ++tally.structure_failures;
  digest << "c8 " << n << " " << m << " " << decided << "\n";
}

void ExhaustiveFormulas(int num_vars, HardnessTally& tally,
                        std::ostream& digest) {
  const std::vector<std::vector<int>> patterns = ClausePatterns(num_vars);
  std::vector<int> occurrences(num_vars + 1, 0);
  CnfFormula formula;
  formula.num_vars = num_vars;
  const auto rec = [&](auto&& self, int start) -> void {
    if (!formula.clauses.empty()) CheckFormula(formula, tally, digest);
    if (static_cast<int>(formula.clauses.size()) == 3 * num_vars) return;
    for (int t = start; t < static_cast<int>(patterns.size()); ++t) {
      bool fits = true;
      for (int literal : patterns[t]) {
        if (++occurrences[std::abs(literal)] > 3) fits = false;
      }
      if (fits) {
        formula.clauses.push_back(patterns[t]);
        self(self, t);
        formula.clauses.pop_back();
      }
      for (int literal : patterns[t]) --occurrences[std::abs(literal)];
    }
  };
  rec(rec, 0);
}

CriterionResult HardnessGadget(std::ostream& digest) {
  HardnessTally tally;
  ExhaustiveFormulas(1, tally, digest);
  ExhaustiveFormulas(2, tally, digest);
  const int exhaustive = tally.formulas;

  Rng rng(kHardnessSeed);
  for (int trial = 0; trial < kHardnessSeededTrials; ++trial) {
    const CnfFormula formula = testing::Random33Formula(rng, 3);
    CheckFormula(formula, tally, digest);
  }

  CriterionResult result;
  result.number = 8;
  result.pass = tally.disagreements == 0 && tally.structure_failures == 0;
  std::ostringstream detail;
  detail << "matching-based decisions agreed with truth tables on "
         << exhaustive << " exhaustive small formulas + "
         << kHardnessSeededTrials << " seeded larger ones ("
         << tally.disagreements << " disagreements, "
         << tally.structure_failures << " malformed reductions)";
  result.detail = detail.str();
  return result;
}

// --- criterion 9: a football-shaped instance solves quickly ----------------
CriterionResult ScaleSmoke(std::ostream& digest) {
  SyntheticSpec spec;
  spec.d = kScaleD;
  spec.n = kScaleN;
  spec.g = kScaleG;
  spec.seed = kScaleSeed;
  const SyntheticData data = GenSynthetic(spec);

  Instance inst;
  inst.rankings = data.rankings;
  inst.groups = data.groups;
  inst.fairness.k = kScaleD / 2;
  const std::vector<int> sizes = inst.groups.GroupSizes();
  for (int a = 0; a < inst.groups.g; ++a) {
    inst.fairness.alpha.push_back(Rational(sizes[a], kScaleD));
    inst.fairness.beta.push_back(Rational(sizes[a], kScaleD));
  }

  const auto start = std::chrono::steady_clock::now();
  const AggregationResult alg3 = AggregateAlg3(inst);
  const double elapsed_ms = 1000.0 * SecondsSince(start);

  const CountBounds bounds = DeriveTopKBounds(inst.fairness, inst.groups);
  const bool fair = CheckFairness(alg3.ranking, bounds, inst.groups);
  const bool ratio_reported = alg3.certified_ratio.has_value();

  digest << "c9 " << alg3.objective << " " << fair;
  if (ratio_reported) {
    digest << " " << alg3.certified_ratio->num() << "/"
           << alg3.certified_ratio->den();
  }
  digest << "\n";

  CriterionResult result;
  result.number = 9;
  result.pass = elapsed_ms < kScaleBudgetMs && fair && ratio_reported;
  std::ostringstream detail;
  detail.setf(std::ios::fixed);
  detail.precision(0);
  detail << "d=" << kScaleD << ", n=" << kScaleN << " aggregate finished in "
         << elapsed_ms << " ms, fair=" << (fair ? "yes" : "no")
         << ", certified ratio ";
  if (ratio_reported) {
    detail << alg3.certified_ratio->num() << "/"
           << alg3.certified_ratio->den();
  } else {
    detail << "missing";
  }
  result.detail = detail.str();
  return result;
}

std::vector<CriterionResult> RunBattery(std::string* digest_out) {
  std::ostringstream digest;
  std::vector<CriterionResult> results;
  results.push_back(ExactTopK(digest));
  for (CriterionResult& r : ApproximationSuite(digest)) {
    results.push_back(std::move(r));
  }
  results.push_back(MetricProperties(digest));
  results.push_back(CompletionOptimality(digest));
  results.push_back(HardnessGadget(digest));
  results.push_back(ScaleSmoke(digest));
  *digest_out = digest.str();
  return results;
}

int RunAcceptance() {
  std::string first_digest;
  std::vector<CriterionResult> results = RunBattery(&first_digest);

  std::string second_digest;
  RunBattery(&second_digest);

  CriterionResult determinism;
  determinism.number = 10;
  determinism.pass =
      !first_digest.empty() && first_digest == second_digest;
  std::ostringstream detail;
  detail << "two full battery runs produced "
         << (determinism.pass ? "identical" : "different")
         << " transcripts (" << first_digest.size() << " bytes)";
  determinism.detail = detail.str();
  results.push_back(determinism);

  int failures = 0;
  for (const CriterionResult& r : results) {
    if (!r.pass) ++failures;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.number
              << ": " << r.detail << "\n";
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILING")
            << " (" << (results.size() - failures) << "/" << results.size()
            << ")\n";
  return failures;
}

}  // namespace
}  // namespace fairagg

int main() { return fairagg::RunAcceptance(); }
