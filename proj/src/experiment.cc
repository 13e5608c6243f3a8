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

#include "fairagg/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "fairagg/metrics.h"
#include "fairagg/oracle.h"
#include "fairagg/solvers.h"

namespace fairagg {

namespace {

using Clock = std::chrono::steady_clock;

const std::set<std::string> kKnownAlgs = {"alg1", "alg2",          "alg3",
                                          "bfi",  "unconstrained", "oracle"};

void RequireKnownAlgs(const std::vector<std::string>& algs) {
  for (const std::string& alg : algs) {
    if (kKnownAlgs.find(alg) == kKnownAlgs.end()) {
      throw ParseError("unknown algorithm: " + alg);
    }
  }
}

std::string FormatFixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return std::string(buffer);
}

}  // namespace

ExperimentConfig ConfigFromJson(const nlohmann::json& source) {
  static const std::set<std::string> known_keys = {
      "rankings", "groups",       "out",      "k",
      "bounds",   "alpha",        "beta",
      "algs",     "metric",       "sweep",
      "seed",     "oracle_max_d", "external",
      "timing",   "enumeration_cap"};
  ExperimentConfig config;
  if (!source.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, value] : source.items()) {
    (void)value;
    if (known_keys.find(key) == known_keys.end()) {
      throw ParseError("unknown config key: " + key);
    }
  }
  const auto get_string = [&source](const char* key, std::string* out) {
    if (source.contains(key)) {
      if (!source[key].is_string()) {
        throw ParseError(std::string("config key '") + key +
                         "' must be a string");
      }
      *out = source[key].get<std::string>();
    }
  };
  get_string("rankings", &config.rankings_path);
  get_string("groups", &config.groups_path);
  get_string("out", &config.out_path);
  get_string("external", &config.external_ranking_path);
  get_string("metric", &config.oracle_metric);
  if (source.contains("k")) {
    if (source["k"].is_number_integer()) {
      config.k = source["k"].get<int>();
    } else if (source["k"].is_string() && source["k"] == "half") {
      config.k.reset();
    } else {
      throw ParseError("config key 'k' must be an integer or \"half\"");
    }
  }
  if (source.contains("bounds")) {
    if (!source["bounds"].is_string() ||
        (source["bounds"] != "proportional" && source["bounds"] != "explicit")) {
      throw ParseError(
          "config key 'bounds' must be \"proportional\" or \"explicit\"");
    }
    config.bounds_policy = source["bounds"].get<std::string>();
  }
  const auto get_literals = [&source](const char* key,
                                      std::vector<std::string>* out) {
    if (!source.contains(key)) return;
    if (!source[key].is_array()) {
      throw ParseError(std::string("config key '") + key +
                       "' must be an array");
    }
    out->clear();
    for (const auto& item : source[key]) {
      if (item.is_string()) {
        out->push_back(item.get<std::string>());
      } else if (item.is_number()) {
        out->push_back(item.dump());
      } else {
        throw ParseError(std::string("config key '") + key +
                         "' must hold rational literals");
      }
    }
  };
  get_literals("alpha", &config.alpha);
  get_literals("beta", &config.beta);
  if (source.contains("algs")) {
    if (!source["algs"].is_array()) {
      throw ParseError("config key 'algs' must be an array");
    }
    config.algs.clear();
    for (const auto& item : source["algs"]) {
      if (!item.is_string()) throw ParseError("algorithm names are strings");
      config.algs.push_back(item.get<std::string>());
    }
  }
  if (source.contains("sweep")) {
    const auto parse_axis = [](const nlohmann::json& axis) {
      if (!axis.is_object() || !axis.contains("var") ||
          !axis.contains("values") || !axis["var"].is_string() ||
          !axis["values"].is_array()) {
        throw ParseError("sweep axes need {\"var\": ..., \"values\": [...]}");
      }
      SweepAxis out;
      out.var = axis["var"].get<std::string>();
      if (out.var != "k" && out.var != "n" && out.var != "d") {
        throw ParseError("sweep var must be one of k, n, d");
      }
      for (const auto& value : axis["values"]) {
        if (!value.is_number_integer()) {
          throw ParseError("sweep values must be integers");
        }
        out.values.push_back(value.get<int>());
      }
      return out;
    };
    if (source["sweep"].is_array()) {
      for (const auto& axis : source["sweep"]) {
        config.sweeps.push_back(parse_axis(axis));
      }
    } else {
      config.sweeps.push_back(parse_axis(source["sweep"]));
    }
  }
  if (source.contains("seed")) {
    if (!source["seed"].is_number_unsigned() &&
        !source["seed"].is_number_integer()) {
      throw ParseError("config key 'seed' must be an integer");
    }
    config.seed = source["seed"].get<std::uint64_t>();
  }
  if (source.contains("oracle_max_d")) {
    if (!source["oracle_max_d"].is_number_integer()) {
      throw ParseError("config key 'oracle_max_d' must be an integer");
    }
    config.oracle_max_d = source["oracle_max_d"].get<int>();
  }
  if (source.contains("timing")) {
    if (!source["timing"].is_boolean()) {
      throw ParseError("config key 'timing' must be a boolean");
    }
    config.timing = source["timing"].get<bool>();
  }
  if (source.contains("enumeration_cap")) {
    if (!source["enumeration_cap"].is_number_integer()) {
      throw ParseError("config key 'enumeration_cap' must be an integer");
    }
    config.enumeration_cap = source["enumeration_cap"].get<std::int64_t>();
  }
  if (config.oracle_metric != "footrule" && config.oracle_metric != "kendall") {
    throw ParseError("metric must be footrule or kendall");
  }
  RequireKnownAlgs(config.algs);
  return config;
}

Dataset SubsetDataset(const Dataset& dataset, int n, int d) {
  if (n < 1 || n > dataset.n()) {
    std::ostringstream msg;
    msg << "subset n = " << n << " outside 1.." << dataset.n();
    throw ParseError(msg.str());
  }
  if (d < 1 || d > dataset.d()) {
    std::ostringstream msg;
    msg << "subset d = " << d << " outside 1.." << dataset.d();
    throw ParseError(msg.str());
  }
  Dataset subset;
  subset.group_names = dataset.group_names;
  subset.groups.d = d;
  subset.groups.g = dataset.groups.g;
  subset.groups.group_of.assign(dataset.groups.group_of.begin(),
                                dataset.groups.group_of.begin() + d);
  subset.candidate_ids.assign(dataset.candidate_ids.begin(),
                              dataset.candidate_ids.begin() + d);
  for (int i = 0; i < n; ++i) {
    const Ranking& pi = dataset.rankings[i];
    // Kept candidates, re-ranked by their relative order in pi.
    std::vector<int> kept(d);
    for (int c = 0; c < d; ++c) kept[c] = c;
    std::sort(kept.begin(), kept.end(), [&pi](int a, int b) {
      return pi.RankOf(a) < pi.RankOf(b);
    });
    std::vector<int> rank_of(d);
    for (int p = 0; p < d; ++p) rank_of[kept[p]] = p + 1;
    subset.rankings.push_back(Ranking(std::move(rank_of)));
  }
  return subset;
}

Instance AssembleInstance(const Dataset& dataset,
                          const ExperimentConfig& config, int k) {
  Instance inst;
  inst.rankings = dataset.rankings;
  inst.groups = dataset.groups;
  if (k < 1 || k > dataset.d()) {
    std::ostringstream msg;
    msg << "k = " << k << " outside 1.." << dataset.d();
    throw ParseError(msg.str());
  }
  inst.fairness.k = k;
  if (config.bounds_policy == "proportional") {
    const std::vector<int> sizes = dataset.groups.GroupSizes();
    for (int a = 0; a < dataset.groups.g; ++a) {
      inst.fairness.alpha.push_back(Rational(sizes[a], dataset.d()));
      inst.fairness.beta.push_back(Rational(sizes[a], dataset.d()));
    }
  } else {
    if (static_cast<int>(config.alpha.size()) != dataset.groups.g ||
        static_cast<int>(config.beta.size()) != dataset.groups.g) {
      throw ParseError("explicit bounds need one alpha and beta per group");
    }
    for (const std::string& literal : config.alpha) {
      inst.fairness.alpha.push_back(Rational::FromString(literal));
    }
    for (const std::string& literal : config.beta) {
      inst.fairness.beta.push_back(Rational::FromString(literal));
    }
  }
  ValidationOptions options;
  options.allow_empty_groups = true;
  const ValidationReport report = ValidateInstance(inst, options);
  if (!report.ok) {
    std::string joined = "invalid instance:";
    for (const std::string& violation : report.violations) {
      joined += " [" + violation + "]";
    }
    // Bound infeasibility surfaces as its own error class for exit codes.
    for (const std::string& violation : report.violations) {
      if (violation.find("bound") != std::string::npos ||
          violation.find("window size") != std::string::npos) {
        throw InfeasibleBounds(joined);
      }
    }
    throw ParseError(joined);
  }
  return inst;
}

namespace {

struct Row {
  Ranking ranking;
  std::int64_t objective = 0;
  std::int64_t kendall_objective = 0;
  std::int64_t unconstrained_objective = 0;
  std::optional<Rational> certified_ratio;
  bool fair = false;
  double wall_ms = 0.0;
};

Row MakeRow(const Instance& inst, Ranking ranking, std::int64_t objective,
            std::int64_t unconstrained_objective, double wall_ms) {
  Row row{std::move(ranking), objective, 0, unconstrained_objective,
          std::nullopt, false, wall_ms};
  row.kendall_objective = KendallObjective(inst.rankings, row.ranking);
  if (unconstrained_objective > 0) {
    row.certified_ratio = Rational(objective, unconstrained_objective);
  } else if (objective == 0) {
    row.certified_ratio = Rational(1, 1);
  }
  const CountBounds bounds = DeriveTopKBounds(inst.fairness, inst.groups);
  row.fair = CheckFairness(row.ranking, bounds, inst.groups);
  return row;
}

Row RowFromAggregation(const Instance& inst, AggregationResult result) {
  Row row = MakeRow(inst, std::move(result.ranking), result.objective,
                    result.unconstrained_objective, result.wall_ms);
  return row;
}

Row ComputeRow(const Instance& inst, const std::string& alg,
               const ExperimentConfig& config) {
  if (alg == "alg1") return RowFromAggregation(inst, AggregateAlg1(inst));
  if (alg == "alg2") return RowFromAggregation(inst, AggregateAlg2(inst));
  if (alg == "alg3") return RowFromAggregation(inst, AggregateAlg3(inst));
  if (alg == "bfi") {
    return RowFromAggregation(inst,
                              BfiAggregate(inst, config.enumeration_cap));
  }
  const auto start = Clock::now();
  if (alg == "unconstrained") {
    UnconstrainedSolution unc = UnconstrainedAggregate(inst.rankings);
    const double wall =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    const std::int64_t objective = unc.objective;
    return MakeRow(inst, std::move(unc.ranking), objective, objective, wall);
  }
  if (alg == "oracle") {
    if (inst.d() > config.oracle_max_d) {
      std::ostringstream msg;
      msg << "oracle on d = " << inst.d() << " exceeds guard oracle_max_d = "
          << config.oracle_max_d;
      throw TooLarge(msg.str());
    }
    const Metric metric = config.oracle_metric == "kendall"
                              ? Metric::kKendall
                              : Metric::kFootrule;
    auto opt = BruteFairFullOpt(inst, metric, config.oracle_max_d);
    if (!opt.has_value()) {
      throw InfeasibleBounds("no fair ranking exists");
    }
    const double wall =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    const std::int64_t footrule_objective =
        Objective(inst.rankings, opt->ranking);
    const std::int64_t unconstrained =
        UnconstrainedAggregate(inst.rankings).objective;
    return MakeRow(inst, std::move(opt->ranking), footrule_objective,
                   unconstrained, wall);
  }
  throw ParseError("unknown algorithm: " + alg);
}

std::vector<int> RankingToOriginalIds(const Ranking& ranking,
                                      const std::vector<std::int64_t>& ids,
                                      std::vector<std::int64_t>* out) {
  const std::vector<int> order = ranking.Order();
  out->clear();
  for (int c : order) out->push_back(ids[c]);
  return order;
}

nlohmann::ordered_json RowToJson(const Row& row, const std::string& variant,
                                 const Dataset& dataset, bool timing) {
  nlohmann::ordered_json out;
  out["variant"] = variant;
  out["objective"] = row.objective;
  out["kendall_objective"] = row.kendall_objective;
  out["unconstrained_objective"] = row.unconstrained_objective;
  if (row.certified_ratio.has_value()) {
    out["certified_ratio"] = row.certified_ratio->ToString();
    out["certified_ratio_value"] = row.certified_ratio->ToDouble();
  } else {
    out["certified_ratio"] = nullptr;
    out["certified_ratio_value"] = nullptr;
  }
  out["fair"] = row.fair;
  out["wall_ms"] = timing ? row.wall_ms : 0.0;
  std::vector<std::int64_t> order_ids;
  RankingToOriginalIds(row.ranking, dataset.candidate_ids, &order_ids);
  out["ranking"] = order_ids;
  return out;
}

int EffectiveK(const ExperimentConfig& config, int d) {
  return config.k.has_value() ? *config.k : d / 2;
}

void RequirePaths(const ExperimentConfig& config) {
  if (config.rankings_path.empty() || config.groups_path.empty()) {
    throw ParseError("rankings and groups paths are required");
  }
}

}  // namespace

nlohmann::ordered_json RunAggregate(const ExperimentConfig& config) {
  RequirePaths(config);
  RequireKnownAlgs(config.algs);
  const Dataset dataset =
      LoadDataset(config.rankings_path, config.groups_path);
  const Instance inst =
      AssembleInstance(dataset, config, EffectiveK(config, dataset.d()));
  const CountBounds bounds = DeriveTopKBounds(inst.fairness, inst.groups);

  nlohmann::ordered_json report;
  report["instance"]["d"] = inst.d();
  report["instance"]["n"] = inst.n();
  report["instance"]["g"] = inst.groups.g;
  report["instance"]["k"] = inst.fairness.k;
  report["instance"]["lower"] = bounds.lower;
  report["instance"]["upper"] = bounds.upper;
  report["instance"]["candidate_ids"] = dataset.candidate_ids;
  report["instance"]["group_names"] = dataset.group_names;
  report["seed"] = config.seed;

  nlohmann::ordered_json results;
  std::vector<std::string> seen;
  for (const std::string& alg : config.algs) {
    if (std::find(seen.begin(), seen.end(), alg) != seen.end()) continue;
    seen.push_back(alg);
    Row row = ComputeRow(inst, alg, config);
    results[alg] = RowToJson(row, alg, dataset, config.timing);
  }
  if (!config.external_ranking_path.empty()) {
    const auto start = Clock::now();
    Ranking external =
        LoadExternalRanking(config.external_ranking_path, dataset);
    const std::int64_t objective = Objective(inst.rankings, external);
    const std::int64_t unconstrained =
        UnconstrainedAggregate(inst.rankings).objective;
    const double wall =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    Row row = MakeRow(inst, std::move(external), objective, unconstrained, wall);
    results["external"] = RowToJson(row, "external", dataset, config.timing);
  }
  report["results"] = results;

  if (!config.out_path.empty()) {
    WriteTextFile(config.out_path, report.dump(2) + "\n");
  }
  return report;
}

std::string RunSweep(const ExperimentConfig& config) {
  RequirePaths(config);
  RequireKnownAlgs(config.algs);
  if (config.sweeps.empty()) {
    throw ParseError("sweep needs at least one axis");
  }
  const Dataset dataset =
      LoadDataset(config.rankings_path, config.groups_path);

  struct Point {
    std::string var;
    int value;
  };
  std::vector<Point> points;
  for (const SweepAxis& axis : config.sweeps) {
    for (int value : axis.values) points.push_back({axis.var, value});
  }

  std::vector<std::string> point_rows(points.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto run_point = [&](size_t index) {
    const Point& point = points[index];
    Dataset subset = dataset;
    int k = 0;
    if (point.var == "k") {
      k = point.value;
    } else if (point.var == "n") {
      subset = SubsetDataset(dataset, point.value, dataset.d());
      k = EffectiveK(config, subset.d());
    } else {
      subset = SubsetDataset(dataset, dataset.n(), point.value);
      k = EffectiveK(config, subset.d());
    }
    const Instance inst = AssembleInstance(subset, config, k);
    std::ostringstream rows;
    std::vector<std::string> seen;
    for (const std::string& alg : config.algs) {
      if (std::find(seen.begin(), seen.end(), alg) != seen.end()) continue;
      seen.push_back(alg);
      if (alg == "oracle" && inst.d() > config.oracle_max_d) continue;
      const Row row = ComputeRow(inst, alg, config);
      rows << point.var << "," << point.value << "," << alg << ","
           << row.objective << "," << row.kendall_objective << ",";
      if (row.certified_ratio.has_value()) {
        rows << FormatFixed(row.certified_ratio->ToDouble(), 6);
      } else {
        rows << "inf";
      }
      rows << "," << FormatFixed(config.timing ? row.wall_ms : 0.0, 3)
           << "\n";
    }
    point_rows[index] = rows.str();
  };

  const int workers =
      std::max(1, std::min<int>(ThreadBudget(),
                                static_cast<int>(points.size())));
  if (workers == 1) {
    for (size_t i = 0; i < points.size(); ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          const size_t index = next.fetch_add(1);
          if (index >= points.size()) break;
          try {
            run_point(index);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::string csv =
      "sweep_var,value,algorithm,objective,kendall_objective,certified_ratio,"
      "wall_ms\n";
  for (const std::string& rows : point_rows) csv += rows;
  if (!config.out_path.empty()) WriteTextFile(config.out_path, csv);
  return csv;
}

nlohmann::ordered_json RunOracleCheck(const ExperimentConfig& config) {
  RequirePaths(config);
  const Dataset dataset =
      LoadDataset(config.rankings_path, config.groups_path);
  if (dataset.d() > config.oracle_max_d) {
    std::ostringstream msg;
    msg << "oracle check on d = " << dataset.d()
        << " exceeds guard oracle_max_d = " << config.oracle_max_d;
    throw TooLarge(msg.str());
  }
  const Instance inst =
      AssembleInstance(dataset, config, EffectiveK(config, dataset.d()));
  const CountBounds bounds = DeriveTopKBounds(inst.fairness, inst.groups);

  const auto brute_full =
      BruteFairFullOpt(inst, Metric::kFootrule, config.oracle_max_d);
  if (!brute_full.has_value()) {
    throw InfeasibleBounds("no fair ranking exists");
  }
  const auto brute_topk = BruteFairTopKOpt(inst, config.oracle_max_d);
  const TopKSolution exact_topk =
      FairTopKExact(inst.rankings, bounds, inst.groups);
  const AggregationResult alg3 = AggregateAlg3(inst);
  const AggregationResult bfi = BfiAggregate(inst, config.enumeration_cap);
  const std::int64_t unconstrained =
      UnconstrainedAggregate(inst.rankings).objective;

  nlohmann::ordered_json out;
  out["d"] = inst.d();
  out["k"] = inst.fairness.k;
  out["fair_optimum"] = brute_full->objective;
  out["topk_optimum"] = brute_topk.has_value() ? brute_topk->objective : -1;
  out["topk_exact"] = exact_topk.objective;
  out["alg3_objective"] = alg3.objective;
  out["bfi_objective"] = bfi.objective;
  out["unconstrained_objective"] = unconstrained;
  out["topk_matches_brute"] =
      brute_topk.has_value() && exact_topk.objective == brute_topk->objective;
  out["alg3_within_2x"] = alg3.objective <= 2 * brute_full->objective;
  out["bfi_within_3x"] = bfi.objective <= 3 * brute_full->objective;
  out["lower_bound_holds"] = unconstrained <= brute_full->objective;
  out["ok"] = out["topk_matches_brute"].get<bool>() &&
              out["alg3_within_2x"].get<bool>() &&
              out["bfi_within_3x"].get<bool>() &&
              out["lower_bound_holds"].get<bool>();
  if (!config.out_path.empty()) {
    WriteTextFile(config.out_path, out.dump(2) + "\n");
  }
  return out;
}

int ThreadBudget() {
  const char* env = std::getenv("FAIRAGG_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || parsed < 1) {
      throw ParseError("FAIRAGG_THREADS must be a positive integer");
    }
    return static_cast<int>(parsed);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace fairagg
