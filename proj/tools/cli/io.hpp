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

// Flat-file formats: trajectory CSV and key-value reports.

#ifndef BWAUCTION_TOOLS_CLI_IO_HPP
#define BWAUCTION_TOOLS_CLI_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "bwauction/equilibrium.hpp"
#include "bwauction/learning.hpp"

namespace bwauction::cli {

/// A report or table could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// 12 significant digits, "%.12g" style; "nan", "inf", "-inf" for
/// non-finite values.
std::string format_number(double x);
double parse_number(const std::string& text);

/// Ordered "key = value" report with '#' comment lines.
class KeyValueReport {
 public:
  void comment(const std::string& text);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, bool value);
  void set(const std::string& key, std::size_t value);
  void set_list(const std::string& key, const std::vector<double>& values);

  std::string str() const { return text_; }
  void write(const std::string& path) const;

 private:
  std::string text_;
};

/// Parses "key = value" lines, skipping blanks and comments.
std::map<std::string, std::string> read_key_values(const std::string& path);

std::vector<std::string> trajectory_header(std::size_t n_sps);

/// One row per record; column count 3 n + 8.
std::string trajectory_csv(const Trajectory& traj, std::size_t n_sps);
void write_trajectory_csv(const std::string& path, const Trajectory& traj, std::size_t n_sps);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
Table parse_csv_table(const std::string& text);
Table read_csv_table(const std::string& path);

void add_strategy(KeyValueReport& r, const std::string& prefix, const StrategyVector& s);
void add_discrepancy(KeyValueReport& r, const DiscrepancyReport& d);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace bwauction::cli

#endif  // BWAUCTION_TOOLS_CLI_IO_HPP
