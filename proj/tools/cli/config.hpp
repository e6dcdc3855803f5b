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

#ifndef BWAUCTION_TOOLS_CLI_CONFIG_HPP
#define BWAUCTION_TOOLS_CLI_CONFIG_HPP

#include <yaml-cpp/yaml.h>

#include <string>
#include <vector>

#include "bwauction/learning.hpp"
#include "bwauction/scenario.hpp"

namespace bwauction::cli {

/// Learning section; a scalar rate_supply is broadcast to every provider.
struct LearningSection {
  double rate_demand = 0.6;
  std::vector<double> rate_supply;  // empty = broadcast rate_supply_scalar
  double rate_supply_scalar = 0.6;
  std::size_t max_steps = 100;
  double convergence_tol = 1e-3;

  LearningParams resolve(std::size_t n_sps) const;
};

struct BaselineSection {
  std::vector<double> step_sizes{0.01, 0.05, 0.1};
  double probe = 1e-2;
};

/// Everything read from a scenario file.
struct RunConfig {
  ScenarioSpec scenario;
  LearningSection learning;
  BaselineSection baseline;
  std::vector<double> sweep_taus{0.1, 0.4, 0.6};
};

YAML::Node load_yaml_file(const std::string& path);

/// Applies "dot.path=value" to `root`. The path must already exist; the
/// value is parsed as YAML, so lists are written as [a, b, c].
void apply_override(YAML::Node& root, const std::string& assignment);

/// Validates keys and converts to typed sections. Throws ConfigError.
RunConfig parse_run_config(const YAML::Node& root);

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace bwauction::cli

#endif  // BWAUCTION_TOOLS_CLI_CONFIG_HPP
