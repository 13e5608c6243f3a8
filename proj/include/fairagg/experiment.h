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

#ifndef FAIRAGG_EXPERIMENT_H_
#define FAIRAGG_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairagg/dataio.h"

namespace fairagg {

struct SweepAxis {
  std::string var;  // "k", "n", or "d"
  std::vector<int> values;
};

struct ExperimentConfig {
  std::string rankings_path;
  std::string groups_path;
  std::string out_path;
  // Explicit k; when absent, k = floor(d/2) of the (sub)instance.
  std::optional<int> k;
  std::string bounds_policy = "proportional";  // or "explicit"
  std::vector<std::string> alpha;              // rational literals
  std::vector<std::string> beta;
  std::vector<std::string> algs = {"alg1", "alg2", "alg3", "bfi",
                                   "unconstrained"};
  std::string oracle_metric = "footrule";  // or "kendall"
  std::vector<SweepAxis> sweeps;
  std::uint64_t seed = 0;
  int oracle_max_d = 7;
  std::string external_ranking_path;
  // When false, wall_ms fields are forced to zero so outputs are
  // byte-reproducible.
  bool timing = true;
  std::int64_t enumeration_cap = 1000000;
};

// Strict parse: unknown keys are rejected so schema drift is caught early.
ExperimentConfig ConfigFromJson(const nlohmann::json& source);

// Restriction of a dataset to its first n rankings (file order) and first d
// candidates (ascending dense id, re-ranked in relative order). Group ids
// keep their dense values; groups emptied by the cut stay present with zero
// size and vacuous proportional bounds.
Dataset SubsetDataset(const Dataset& dataset, int n, int d);

// Instance assembly: proportional bounds use alpha_a = beta_a = |G_a| / d.
Instance AssembleInstance(const Dataset& dataset, const ExperimentConfig& config,
                          int k);

// Runs the selected algorithms on the full dataset; returns (and optionally
// writes) a JSON report with one entry per algorithm.
nlohmann::ordered_json RunAggregate(const ExperimentConfig& config);

// Runs the selected algorithms across the configured sweep axes; returns
// (and optionally writes) csv rows
//   sweep_var,value,algorithm,objective,kendall_objective,certified_ratio,
//   wall_ms
// in config order. Points run in parallel, capped by FAIRAGG_THREADS; row
// order does not depend on scheduling. oracle rows are emitted only for
// points whose d fits under oracle_max_d.
std::string RunSweep(const ExperimentConfig& config);

// Small-instance exactness audit: compares the flow solver, the one-sided
// pipelines, and the interpolation baseline against brute-force enumeration
// on the loaded dataset. Returns a JSON verdict; "ok" is true when every
// check holds.
nlohmann::ordered_json RunOracleCheck(const ExperimentConfig& config);

int ThreadBudget();

}  // namespace fairagg

#endif  // FAIRAGG_EXPERIMENT_H_
