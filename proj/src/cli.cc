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

#include "fairagg/cli.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fairagg/dataio.h"
#include "fairagg/experiment.h"
#include "fairagg/hardness.h"
#include "fairagg/synthetic.h"

namespace fairagg {

namespace {

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::vector<int> SplitIntList(const std::string& text, const char* what) {
  std::vector<int> values;
  for (const std::string& part : SplitList(text)) {
    try {
      size_t used = 0;
      const int value = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      values.push_back(value);
    } catch (const std::exception&) {
      throw ParseError(std::string(what) + ": '" + part +
                       "' is not an integer");
    }
  }
  return values;
}

// Flags shared by aggregate / sweep / oracle-check. Flag values override the
// JSON config when both are given.
struct CommonFlags {
  std::string rankings, groups, config, out, k, algs, metric, alpha, beta;
  std::string external;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int oracle_max_d = 0;
  bool oracle_max_d_set = false;
  bool no_timing = false;
  std::int64_t enumeration_cap = 0;
  bool cap_set = false;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--rankings", flags->rankings, "rankings csv path");
  cmd->add_option("--groups", flags->groups, "groups csv path");
  cmd->add_option("--config", flags->config, "JSON config path");
  cmd->add_option("--out", flags->out, "output file path");
  cmd->add_option("--k", flags->k, "top window size, or 'half'");
  cmd->add_option("--algs", flags->algs,
                  "comma list from alg1,alg2,alg3,bfi,unconstrained,oracle");
  cmd->add_option("--metric", flags->metric,
                  "objective the oracle minimizes: footrule or kendall");
  cmd->add_option("--alpha", flags->alpha,
                  "comma list of per-group lower fractions");
  cmd->add_option("--beta", flags->beta,
                  "comma list of per-group upper fractions");
  cmd->add_option("--external", flags->external,
                  "externally produced ranking csv to score");
  cmd->add_option("--seed", flags->seed, "seed recorded in outputs")
      ->each([flags](const std::string&) { flags->seed_set = true; });
  cmd->add_option("--oracle-max-d", flags->oracle_max_d,
                  "largest d the brute-force oracle accepts")
      ->each([flags](const std::string&) { flags->oracle_max_d_set = true; });
  cmd->add_flag("--no-timing", flags->no_timing,
                "zero out wall_ms fields for byte-reproducible output");
  cmd->add_option("--enumeration-cap", flags->enumeration_cap,
                  "occupancy enumeration cap for the interpolation baseline")
      ->each([flags](const std::string&) { flags->cap_set = true; });
}

ExperimentConfig BuildConfig(const CommonFlags& flags) {
  ExperimentConfig config;
  if (!flags.config.empty()) {
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(ReadTextFile(flags.config));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad JSON config: ") + e.what());
    }
    config = ConfigFromJson(parsed);
  }
  if (!flags.rankings.empty()) config.rankings_path = flags.rankings;
  if (!flags.groups.empty()) config.groups_path = flags.groups;
  if (!flags.out.empty()) config.out_path = flags.out;
  if (!flags.external.empty()) config.external_ranking_path = flags.external;
  if (!flags.k.empty()) {
    if (flags.k == "half") {
      config.k.reset();
    } else {
      try {
        size_t used = 0;
        config.k = std::stoi(flags.k, &used);
        if (used != flags.k.size()) throw std::invalid_argument(flags.k);
      } catch (const std::exception&) {
        throw ParseError("--k must be an integer or 'half'");
      }
    }
  }
  if (!flags.algs.empty()) config.algs = SplitList(flags.algs);
  if (!flags.metric.empty()) {
    if (flags.metric != "footrule" && flags.metric != "kendall") {
      throw ParseError("--metric must be footrule or kendall");
    }
    config.oracle_metric = flags.metric;
  }
  if (!flags.alpha.empty() || !flags.beta.empty()) {
    config.bounds_policy = "explicit";
    if (!flags.alpha.empty()) config.alpha = SplitList(flags.alpha);
    if (!flags.beta.empty()) config.beta = SplitList(flags.beta);
  }
  if (flags.seed_set) config.seed = flags.seed;
  if (flags.oracle_max_d_set) config.oracle_max_d = flags.oracle_max_d;
  if (flags.no_timing) config.timing = false;
  if (flags.cap_set) config.enumeration_cap = flags.enumeration_cap;
  return config;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"fair rank aggregation under the footrule distance"};
  app.require_subcommand(1);

  CommonFlags aggregate_flags;
  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "aggregate one instance with the selected algorithms");
  AddCommonFlags(aggregate, &aggregate_flags);

  CommonFlags sweep_flags;
  std::string sweep_var;
  std::string sweep_values;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the algorithms across a parameter sweep, emitting csv");
  AddCommonFlags(sweep, &sweep_flags);
  sweep->add_option("--var", sweep_var, "sweep variable: k, n, or d");
  sweep->add_option("--values", sweep_values, "comma list of sweep values");

  CommonFlags check_flags;
  CLI::App* check = app.add_subcommand(
      "oracle-check", "audit solver exactness against brute force (small d)");
  AddCommonFlags(check, &check_flags);

  int gen_d = 0, gen_n = 0, gen_g = 1;
  std::uint64_t gen_seed = 0;
  std::string gen_model = "uniform";
  double gen_theta = 0.0;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand(
      "gen", "generate a synthetic dataset (rankings + groups csv)");
  gen->add_option("--d", gen_d, "number of candidates")->required();
  gen->add_option("--n", gen_n, "number of rankings")->required();
  gen->add_option("--g", gen_g, "number of groups (candidate c joins c mod g)");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--model", gen_model, "uniform or mallows");
  gen->add_option("--theta", gen_theta,
                  "mallows dispersion: round(theta*d) adjacent swaps");
  gen->add_option("--out", gen_out, "output path prefix")->required();

  std::string sat_cnf, sat_out;
  bool sat_decide = false;
  int sat_max_vars = 3;
  CLI::App* reduce = app.add_subcommand(
      "reduce-sat", "build the fair-matching instance for a (3,3) cnf");
  reduce->add_option("--cnf", sat_cnf, "DIMACS cnf path")->required();
  reduce->add_option("--out", sat_out, "JSON dump path (default: stdout)");
  reduce->add_flag("--decide", sat_decide,
                   "also decide satisfiability via the matching");
  reduce->add_option("--max-vars", sat_max_vars,
                     "guard on variable count for --decide");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (aggregate->parsed()) {
      const ExperimentConfig config = BuildConfig(aggregate_flags);
      out << RunAggregate(config).dump(2) << "\n";
      return 0;
    }
    if (sweep->parsed()) {
      ExperimentConfig config = BuildConfig(sweep_flags);
      if (!sweep_var.empty() || !sweep_values.empty()) {
        if (sweep_var.empty() || sweep_values.empty()) {
          throw ParseError("--var and --values must be given together");
        }
        config.sweeps = {
            {sweep_var, SplitIntList(sweep_values, "--values")}};
      }
      out << RunSweep(config);
      return 0;
    }
    if (check->parsed()) {
      const ExperimentConfig config = BuildConfig(check_flags);
      const nlohmann::ordered_json verdict = RunOracleCheck(config);
      out << verdict.dump(2) << "\n";
      return verdict["ok"].get<bool>() ? 0 : 1;
    }
    if (gen->parsed()) {
      SyntheticSpec spec;
      spec.d = gen_d;
      spec.n = gen_n;
      spec.g = gen_g;
      spec.seed = gen_seed;
      spec.theta = gen_theta;
      if (gen_model == "uniform") {
        spec.model = RankingModel::kUniform;
      } else if (gen_model == "mallows") {
        spec.model = RankingModel::kMallows;
      } else {
        throw ParseError("--model must be uniform or mallows");
      }
      const SyntheticData data = GenSynthetic(spec);
      std::vector<std::int64_t> ids(spec.d);
      for (int c = 0; c < spec.d; ++c) ids[c] = c;
      std::vector<std::string> names(spec.g);
      for (int a = 0; a < spec.g; ++a) names[a] = std::to_string(a);
      WriteRankingsCsv(gen_out + ".rankings.csv", data.rankings, ids);
      WriteGroupsCsv(gen_out + ".groups.csv", data.groups, ids, names);
      out << "wrote " << gen_out << ".rankings.csv and " << gen_out
          << ".groups.csv\n";
      return 0;
    }
    if (reduce->parsed()) {
      const CnfFormula formula = ParseDimacs(ReadTextFile(sat_cnf));
      const FairMatchingInstance instance = Reduce33Sat(formula);
      nlohmann::ordered_json dump = ReductionToJson(instance);
      dump["num_vars"] = formula.num_vars;
      dump["num_clauses"] = static_cast<int>(formula.clauses.size());
      if (sat_decide) {
        const SatResult result = Decide33SatViaMatching(formula, sat_max_vars);
        dump["decision"] = result == SatResult::kSat ? "SAT" : "UNSAT";
      }
      if (!sat_out.empty()) {
        WriteTextFile(sat_out, dump.dump(2) + "\n");
        out << "wrote " << sat_out << "\n";
      } else {
        out << dump.dump(2) << "\n";
      }
      return 0;
    }
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const InfeasibleBounds& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const TooLarge& e) {
    err << "guard breach: " << e.what() << "\n";
    return 4;
  } catch (const EnumerationCapExceeded& e) {
    err << "guard breach: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedFormula& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatch& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const WrongSide& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "unexpected failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fairagg
