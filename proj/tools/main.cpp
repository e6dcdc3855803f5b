// Copyright 2026 The bwauction Authors
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

#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"

using bwauction::cli::Command;
using bwauction::cli::ExitCode;
using bwauction::cli::RunManifest;

int main(int argc, char** argv) {
  CLI::App app{"bwauction: bandwidth auction equilibria and learning dynamics"};
  app.require_subcommand(1);

  RunManifest m;
  std::string mutation = "none";

  auto common = [&](CLI::App* sub, bool needs_scenario) {
    auto* opt = sub->add_option("--scenario", m.scenario_path, "scenario YAML file");
    if (needs_scenario) opt->required();
    sub->add_option("--out", m.output_dir, "output directory")->capture_default_str();
    sub->add_option("--set", m.overrides, "override a config value, e.g. learning.max_steps=50");
    sub->add_option("--seed", m.seed, "random seed");
  };

  auto* solve = app.add_subcommand("solve", "equilibrium by closed form and best-response oracle");
  common(solve, true);
  auto* learn = app.add_subcommand("learn", "best-response learning from the default start");
  common(learn, true);
  auto* sweep = app.add_subcommand("sweep", "learning across adjustment rates");
  common(sweep, true);
  sweep->add_option("--tau", m.taus, "adjustment rates in (0, 1]");
  auto* compare = app.add_subcommand("compare", "learning against the gradient baseline");
  common(compare, true);
  auto* validate = app.add_subcommand("validate", "randomized property suites");
  common(validate, false);
  validate->add_option("--replay", m.replay, "failure file to replay");
  validate->add_option("--mutation", mutation, "none | clearing_price_offset")
      ->check(CLI::IsMember({"none", "clearing_price_offset"}));
  validate->add_option("--cases-market-balance", m.suite_sizes.market_balance);
  validate->add_option("--cases-oracle-nash", m.suite_sizes.oracle_nash);
  validate->add_option("--cases-fixed-point", m.suite_sizes.fixed_point);
  validate->add_option("--cases-alternation", m.suite_sizes.alternation);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  if (*solve) m.command = Command::solve;
  if (*learn) m.command = Command::learn;
  if (*sweep) m.command = Command::sweep;
  if (*compare) m.command = Command::compare;
  if (*validate) m.command = Command::validate;
  m.mutation = mutation == "clearing_price_offset" ? bwauction::Mutation::clearing_price_offset
                                                   : bwauction::Mutation::none;

  return static_cast<int>(bwauction::cli::run_command(m, std::cerr));
}
