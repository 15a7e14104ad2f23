// Copyright 2026 The entswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "entswap/ensembles.hpp"
#include "entswap/experiments.hpp"
#include "entswap/io.hpp"
#include "entswap/optics.hpp"
#include "entswap/swap.hpp"

namespace entswap::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExperimentConfig experiment_config(const RunConfig& rc) {
  ExperimentConfig cfg;
  cfg.samples = rc.samples;
  cfg.seed = rc.seed;
  cfg.workers = rc.workers;
  cfg.rank_tol = rc.rank_tol;
  auto ensemble = Ensemble::parse(rc.ensemble);
  if (!ensemble) throw UsageError("unknown ensemble '" + rc.ensemble + "'");
  cfg.ensemble = *ensemble;
  return cfg;
}

std::filesystem::path summary_path(const std::filesystem::path& records_path) {
  std::filesystem::path p = records_path;
  p.replace_extension(".summary.json");
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot write " + path.string());
  file << contents;
  if (!file) throw std::ios_base::failure("failed writing " + path.string());
}

json swap_to_json(const SwapResult<double>& r, double rank_tol) {
  return {{"outcome", to_string(r.outcome)},
          {"probability", r.probability},
          {"concurrence", concurrence(r.state)},
          {"rank", numerical_rank(r.state, rank_tol)},
          {"state", matrix_to_json(r.state.matrix())}};
}

int cmd_swap(const RunConfig& rc, const std::string& file_a, const std::string& file_b,
             std::ostream& out) {
  const auto a = load_density_matrix(file_a);
  const auto b = load_density_matrix(file_b);
  const auto result = swap_general(a, b, rc.outcome);
  out << swap_to_json(result, rc.rank_tol).dump(2) << '\n';
  return kExitOk;
}

int cmd_experiment(const RunConfig& rc, const std::string& name, std::ostream& out) {
  const auto names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw UsageError("unknown experiment '" + name + "'");
  }
  const ExperimentConfig cfg = experiment_config(rc);
  std::filesystem::path records_path = rc.output_path;
  if (records_path.empty()) records_path = name + (rc.format == Format::Json ? ".json" : ".csv");

  auto result = run_experiment(name, cfg);
  std::ostringstream records;
  if (rc.format == Format::Json) {
    records << records_to_json(result->records).dump() << '\n';
  } else {
    write_records_csv(records, result->records);
  }
  const json summary = report_to_json(result->report);
  write_file(records_path, records.str());
  write_file(summary_path(records_path), summary.dump(2) + "\n");
  out << summary.dump(2) << '\n';
  return result->report.failed(rc.strict) ? kExitViolation : kExitOk;
}

int cmd_oracle_check(const RunConfig& rc, const std::vector<std::string>& files,
                     std::ostream& out) {
  if (files.empty()) {
    if (rc.eta != 0.5) throw UsageError("random oracle check compares at eta = 0.5 only");
    const auto result = run_oracle_equiv(experiment_config(rc));
    out << report_to_json(result.report).dump(2) << '\n';
    return result.report.failed(true) ? kExitViolation : kExitOk;
  }
  if (files.size() != 2) throw UsageError("oracle-check takes zero or two state files");
  const auto a = load_density_matrix(files[0]);
  const auto b = load_density_matrix(files[1]);
  const BeamsplitterBsm<double> bsm(rc.eta);

  json report = {{"eta", rc.eta}};
  std::optional<SwapResult<double>> optical;
  try {
    optical = bsm.swap(a, b);
    report["coincidence"] = true;
    report["beamsplitter"] = swap_to_json(*optical, rc.rank_tol);
  } catch (const NoCoincidence&) {
    report["coincidence"] = false;
  }
  int code = kExitOk;
  if (rc.eta == 0.5) {
    std::optional<SwapResult<double>> analytic;
    try {
      analytic = swap_general(a, b, BellLabel::PsiMinus);
      report["analytic"] = swap_to_json(*analytic, rc.rank_tol);
    } catch (const ImpossibleOutcome&) {
    }
    if (analytic.has_value() != optical.has_value()) {
      code = kExitViolation;
    } else if (analytic) {
      const double distance = trace_distance(analytic->state, optical->state);
      const double gap = std::abs(analytic->probability - optical->probability);
      report["trace_distance"] = distance;
      report["probability_gap"] = gap;
      if (distance >= kOracleTolerance || gap >= kOracleTolerance) code = kExitViolation;
    }
    report["agree"] = code == kExitOk;
  }
  out << report.dump(2) << '\n';
  return code;
}

int cmd_sample(const RunConfig& rc, const std::string& ensemble, std::ostream& out) {
  std::ostringstream body;
  json states = json::array();
  if (rc.format == Format::Csv) body << "sample,concurrence,rank,purity\n";

  std::optional<Ensemble> parsed = Ensemble::parse(ensemble);
  const bool belldiag = ensemble == "belldiag";
  if (!parsed && !belldiag) throw UsageError("unknown ensemble '" + ensemble + "'");

  for (std::size_t i = 0; i < rc.samples; ++i) {
    RngStream rng(rc.seed, i);
    const DensityMatrix<double> rho =
        belldiag ? random_bell_diagonal<double>(rng).density() : parsed->draw(rng);
    if (rc.format == Format::Json) {
      states.push_back(matrix_to_json(rho.matrix()));
    } else {
      body << i << ',' << format_real(concurrence(rho)) << ','
           << numerical_rank(rho, rc.rank_tol) << ',' << format_real(rho.purity()) << '\n';
    }
  }
  if (rc.format == Format::Json) body << states.dump(2) << '\n';
  if (rc.output_path.empty()) {
    out << body.str();
  } else {
    write_file(rc.output_path, body.str());
  }
  return kExitOk;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ENTSWAP_SEED")) {
    std::uint64_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && ptr != env) return value;
  }
  return 42;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  rc.seed = default_seed();

  CLI::App app{"Entanglement swapping of arbitrary two-qubit states"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats = {{"csv", Format::Csv}, {"json", Format::Json}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--samples", rc.samples, "Number of samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", rc.seed, "RNG seed (overrides ENTSWAP_SEED)");
    sub->add_option("--workers", rc.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--rank-tol", rc.rank_tol, "Relative eigenvalue cutoff for rank")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", rc.output_path, "Output path");
    sub->add_option("--format", rc.format, "csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  std::string file_a, file_b;
  auto* swap_cmd = app.add_subcommand("swap", "Swap two states from matrix JSON files");
  swap_cmd->add_option("state_a", file_a, "State on modes 1,2")->required();
  swap_cmd->add_option("state_b", file_b, "State on modes 3,4")->required();
  std::string outcome = "psi-";
  swap_cmd->add_option("--outcome", outcome, "psi+, psi-, phi+ or phi-")
      ->check(CLI::IsMember({"psi+", "psi-", "phi+", "phi-"}));
  swap_cmd->add_option("--rank-tol", rc.rank_tol, "Relative eigenvalue cutoff for rank")
      ->check(CLI::PositiveNumber);

  std::string experiment_name;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  exp_cmd->add_option("name", experiment_name, "conserve, belldiag, pure, rank, rank2-selfswap, "
                                               "oracle-equiv or haar-stats")
      ->required();
  add_common(exp_cmd);
  exp_cmd->add_option("--ensemble", rc.ensemble, "bures, pure, hs or induced-k (conserve)");
  exp_cmd->add_flag("--strict", rc.strict, "Fail on empirical-bound violations too");

  std::vector<std::string> oracle_files;
  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "Compare closed form with the beamsplitter model");
  oracle_cmd->add_option("states", oracle_files, "Optional pair of state files");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--eta", rc.eta, "Beamsplitter reflectivity")
      ->check(CLI::Range(0.0, 1.0));

  std::string sample_ensemble;
  auto* sample_cmd = app.add_subcommand("sample", "Draw states from an ensemble");
  sample_cmd->add_option("ensemble", sample_ensemble, "bures, pure, hs, induced-k or belldiag")
      ->required();
  add_common(sample_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*swap_cmd) {
      rc.command = "swap";
      rc.outcome = *parse_bell_label(outcome);
      return cmd_swap(rc, file_a, file_b, out);
    }
    if (*exp_cmd) {
      rc.command = "experiment";
      return cmd_experiment(rc, experiment_name, out);
    }
    if (*oracle_cmd) {
      rc.command = "oracle-check";
      if (rc.eta <= 0.0 || rc.eta >= 1.0) throw UsageError("--eta must lie in (0,1)");
      return cmd_oracle_check(rc, oracle_files, out);
    }
    if (*sample_cmd) {
      rc.command = "sample";
      return cmd_sample(rc, sample_ensemble, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
  } catch (const ImpossibleOutcome& e) {
    err << "impossible outcome: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace entswap::cli
