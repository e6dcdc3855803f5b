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

#ifndef BWAUCTION_TOOLS_CLI_COMMANDS_HPP
#define BWAUCTION_TOOLS_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bwauction/properties.hpp"

namespace bwauction::cli {

enum class Command { solve, learn, sweep, validate, compare };

/// Process exit codes. Values are stable.
enum class ExitCode : int {
  ok = 0,
  usage = 1,
  config = 2,
  no_equilibrium = 3,
  non_convergence = 4,
  diverged = 5,
  property_failure = 6,
  geometry = 7,
  domain = 8,
  no_best_response = 9,
  io = 10,
  internal = 11,
};

const char* exit_code_name(ExitCode code);

struct RunManifest {
  Command command = Command::solve;
  std::string scenario_path;
  std::string output_dir = ".";
  std::vector<std::string> overrides;  // dot.path=value
  std::optional<std::uint64_t> seed;
  std::vector<double> taus;            // sweep only; empty = config sweep.taus
  std::optional<std::string> replay;   // validate only
  Mutation mutation = Mutation::none;  // validate only
  SuiteSizes suite_sizes{};            // validate only
};

/// Runs one command. Every failure is caught, written to
/// <output_dir>/error.txt as a key-value record and mapped to an ExitCode.
ExitCode run_command(const RunManifest& manifest, std::ostream& log);

}  // namespace bwauction::cli

#endif  // BWAUCTION_TOOLS_CLI_COMMANDS_HPP
