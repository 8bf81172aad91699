// Copyright 2026 The Unitarity Project Authors
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

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "unitarity/harness.hpp"
#include "unitarity/version.hpp"

namespace {

using unitarity::ExperimentConfig;

void add_shared_flags(CLI::App* sub, ExperimentConfig& cfg,
                      std::string& channel_arg, std::string& access_arg,
                      std::string& variant_arg, std::string& format_arg,
                      bool needs_channel) {
  auto* ch = sub->add_option("--channel", channel_arg,
                             "Channel: builtin:name,k=v,...,dim=<n> or a JSON "
                             "Kraus file path");
  if (needs_channel) ch->required();
  sub->add_option("--access", access_arg, "coherent|incoherent")
      ->check(CLI::IsMember({"coherent", "incoherent"}));
  sub->add_option("--epsilon", cfg.epsilon, "Target precision");
  sub->add_option("--delta", cfg.delta, "Failure probability");
  sub->add_option("--variant", variant_arg, "u|uprime")
      ->check(CLI::IsMember({"u", "uprime"}));
  sub->add_option("--seed", cfg.seed, "Master RNG seed");
  sub->add_option("--repeats", cfg.repeats, "Independent repeats");
  sub->add_option("--workers", cfg.workers, "Concurrent workers");
  sub->add_option("--out", cfg.out_path, "Output path (default: stdout)");
  sub->add_option("--format", format_arg, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void finish_config(ExperimentConfig& cfg, const std::string& channel_arg,
                   const std::string& access_arg,
                   const std::string& variant_arg,
                   const std::string& format_arg) {
  if (!channel_arg.empty()) {
    cfg.channel = unitarity::parse_channel_spec(channel_arg);
  }
  cfg.access = access_arg == "coherent" ? unitarity::Access::kCoherent
                                        : unitarity::Access::kIncoherent;
  cfg.variant = variant_arg == "uprime" ? unitarity::UnitarityVariant::kUAlt
                                        : unitarity::UnitarityVariant::kU;
  cfg.format = format_arg == "csv" ? unitarity::OutputFormat::kCsv
                                   : unitarity::OutputFormat::kJson;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitarity estimation for quantum channels: statistical "
               "estimators with exact oracle cross-checks"};
  app.set_version_flag("--version", unitarity::kVersion);
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string channel_arg, format_arg = "json";
  std::string access_arg = "incoherent", variant_arg = "u";
  std::vector<Eigen::Index> dims;
  std::vector<double> epsilons;
  std::uint64_t budget = 0;
  bool has_budget = false;

  auto* estimate = app.add_subcommand(
      "estimate", "Estimate the unitarity of a channel");
  add_shared_flags(estimate, cfg, channel_arg, access_arg, variant_arg,
                   format_arg, true);

  auto* oracle = app.add_subcommand(
      "oracle", "Exact indices (u, u', p, o, s, t) of a channel");
  add_shared_flags(oracle, cfg, channel_arg, access_arg, variant_arg,
                   format_arg, true);

  auto* bounds = app.add_subcommand(
      "bounds", "Unitary-approximability bounds and candidate unitary");
  add_shared_flags(bounds, cfg, channel_arg, access_arg, variant_arg,
                   format_arg, true);

  auto* scaling = app.add_subcommand(
      "scaling", "Query-count scaling sweep over dimensions and precisions");
  add_shared_flags(scaling, cfg, channel_arg, access_arg, variant_arg,
                   format_arg, true);
  scaling->add_option("--dims", dims, "Dimensions to sweep")
      ->required()
      ->delimiter(',');
  scaling->add_option("--epsilons", epsilons, "Precisions to sweep")
      ->required()
      ->delimiter(',');

  auto* distinguish = app.add_subcommand(
      "distinguish", "Depolarizing-vs-unitary distinguishing experiment");
  add_shared_flags(distinguish, cfg, channel_arg, access_arg, variant_arg,
                   format_arg, false);
  distinguish->add_option("--dim", cfg.dim, "System dimension");
  distinguish->add_option("--trials", cfg.trials, "Number of trials");
  auto* budget_opt = distinguish->add_option(
      "--budget", budget, "Channel-query budget per trial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    finish_config(cfg, channel_arg, access_arg, variant_arg, format_arg);
    cfg.dims = dims;
    cfg.epsilons = epsilons;
    has_budget = budget_opt->count() > 0;
    if (has_budget) cfg.budget = budget;
    if (estimate->parsed()) cfg.kind = ExperimentConfig::Kind::kEstimate;
    if (oracle->parsed()) cfg.kind = ExperimentConfig::Kind::kOracle;
    if (bounds->parsed()) cfg.kind = ExperimentConfig::Kind::kBounds;
    if (scaling->parsed()) cfg.kind = ExperimentConfig::Kind::kScaling;
    if (distinguish->parsed()) {
      cfg.kind = ExperimentConfig::Kind::kDistinguish;
      // Distinguishing needs only constant precision; default looser than
      // the estimate subcommand's.
      if (estimate->count("--epsilon") == 0 &&
          distinguish->count("--epsilon") == 0) {
        cfg.epsilon = 0.2;
      }
    }
    const unitarity::ResultRecord rec = unitarity::run_experiment(cfg);
    unitarity::emit_result(rec, cfg.out_path, cfg.format);
  } catch (const unitarity::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const unitarity::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const unitarity::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
