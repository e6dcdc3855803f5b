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

#include "cli/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bwauction::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", x);
}

double parse_number(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw IoError("not a number: '" + text + "'");
  }
  return v;
}

void KeyValueReport::comment(const std::string& text) { text_ += "# " + text + "\n"; }

void KeyValueReport::set(const std::string& key, const std::string& value) {
  text_ += key + " = " + value + "\n";
}
void KeyValueReport::set(const std::string& key, double value) { set(key, format_number(value)); }
void KeyValueReport::set(const std::string& key, bool value) {
  set(key, std::string(value ? "true" : "false"));
}
void KeyValueReport::set(const std::string& key, std::size_t value) {
  set(key, std::to_string(value));
}
void KeyValueReport::set_list(const std::string& key, const std::vector<double>& values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) joined += ",";
    joined += format_number(values[i]);
  }
  set(key, joined);
}

void KeyValueReport::write(const std::string& path) const { write_text(path, text_); }

std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::map<std::string, std::string> out;
  std::istringstream is(read_text(path));
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

std::vector<std::string> trajectory_header(std::size_t n) {
  std::vector<std::string> h{"step"};
  for (std::size_t i = 1; i <= n; ++i) h.push_back("lambda_S_" + std::to_string(i));
  h.insert(h.end(), {"lambda_D", "price", "b_D"});
  for (std::size_t i = 1; i <= n; ++i) h.push_back("b_S_" + std::to_string(i));
  h.push_back("payoff_D");
  for (std::size_t i = 1; i <= n; ++i) h.push_back("payoff_S_" + std::to_string(i));
  h.insert(h.end(), {"k_est", "c_est", "guard_flag"});
  return h;
}

std::string trajectory_csv(const Trajectory& traj, std::size_t n) {
  std::string out;
  const auto header = trajectory_header(n);
  for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
  out += "\n";
  for (const auto& r : traj.records) {
    std::vector<std::string> cells{std::to_string(r.step)};
    for (double x : r.strategies.supply_intercepts) cells.push_back(format_number(x));
    cells.push_back(format_number(r.strategies.demand_intercept));
    cells.push_back(format_number(r.outcome.price));
    cells.push_back(format_number(r.outcome.demand_bw));
    for (double x : r.outcome.supply_bws) cells.push_back(format_number(x));
    cells.push_back(format_number(r.outcome.demand_payoff));
    for (double x : r.outcome.supply_payoffs) cells.push_back(format_number(x));
    cells.push_back(format_number(r.k_est));
    cells.push_back(format_number(r.c_est));
    cells.push_back(r.guard_held ? "1" : "0");
    for (std::size_t c = 0; c < cells.size(); ++c) out += (c ? "," : "") + cells[c];
    out += "\n";
  }
  return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj, std::size_t n) {
  write_text(path, trajectory_csv(traj, n));
}

Table parse_csv_table(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw IoError("csv row has " + std::to_string(cells.size()) +
                               " cells, header has " + std::to_string(t.header.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_csv_table(const std::string& path) { return parse_csv_table(read_text(path)); }

void add_strategy(KeyValueReport& r, const std::string& prefix, const StrategyVector& s) {
  for (std::size_t i = 0; i < s.n_sps(); ++i)
    r.set(prefix + ".lambda_S_" + std::to_string(i + 1), s.supply_intercepts[i]);
  r.set(prefix + ".lambda_D", s.demand_intercept);
}

void add_discrepancy(KeyValueReport& r, const DiscrepancyReport& d) {
  const std::size_t m = d.abs_gaps.size();
  r.set("discrepancy.source_a", std::string(to_string(d.source_a)));
  r.set("discrepancy.source_b", std::string(to_string(d.source_b)));
  r.set("discrepancy.rel_tolerance", d.tolerance);
  r.set("discrepancy.agree", d.agree);
  std::string bad;
  for (std::size_t k : d.disagreeing_components()) {
    if (!bad.empty()) bad += ",";
    bad += Player::from_flat(k, m - 1).label();
  }
  r.set("discrepancy.disagreeing_components", bad.empty() ? std::string("none") : bad);
  for (std::size_t k = 0; k < m; ++k) {
    const std::string key = "discrepancy." + Player::from_flat(k, m - 1).label();
    r.set(key + ".abs_gap", d.abs_gaps[k]);
    r.set(key + ".rel_gap", d.rel_gaps[k]);
    r.set(key + ".argmax_gap_a", d.argmax_gaps_a[k]);
    r.set(key + ".argmax_gap_b", d.argmax_gaps_b[k]);
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + path);
  os << text;
  if (!os) throw IoError("write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace bwauction::cli
