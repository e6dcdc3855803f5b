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

#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "bwauction/errors.hpp"
#include "bwauction/radio.hpp"

namespace bwauction::cli {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream is(s);
  while (std::getline(is, part, sep)) out.push_back(part);
  return out;
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

/// Rejects keys outside `allowed` so that typos do not silently fall back
/// to defaults.
void check_keys(const YAML::Node& node, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!node) return;
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping", {where});
  std::vector<std::string> unknown;
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) unknown.push_back(join(where, key));
  }
  if (!unknown.empty()) throw ConfigError("unknown configuration keys", unknown);
}

template <typename T>
T read(const YAML::Node& node, const std::string& key, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("cannot read " + join(where, key), {join(where, key)});
  }
}

template <typename T>
T get(const YAML::Node& parent, const std::string& key, const std::string& where, T fallback) {
  const YAML::Node n = parent[key];
  if (!n) return fallback;
  return read<T>(n, key, where);
}

template <typename T>
T require(const YAML::Node& parent, const std::string& key, const std::string& where) {
  const YAML::Node n = parent[key];
  if (!n) throw ConfigError("missing required key " + join(where, key), {join(where, key)});
  return read<T>(n, key, where);
}

std::vector<double> list_or_scalar(const YAML::Node& n, const std::string& path) {
  try {
    if (n.IsSequence()) return n.as<std::vector<double>>();
    return {n.as<double>()};
  } catch (const YAML::Exception&) {
    throw ConfigError("cannot read " + path, {path});
  }
}

/// SINR block given either in dB ("sinr_db") or as linear ratios
/// ("sinr_linear"); stored in dB.
void read_sinrs(const YAML::Node& direct, DirectSpec& d) {
  const bool has_db = static_cast<bool>(direct["sinr_db"]);
  const bool has_lin = static_cast<bool>(direct["sinr_linear"]);
  if (has_db == has_lin) {
    throw ConfigError("give exactly one of sinr_db or sinr_linear",
                      {"scenario.direct.sinr_db", "scenario.direct.sinr_linear"});
  }
  const std::string where = has_db ? "scenario.direct.sinr_db" : "scenario.direct.sinr_linear";
  const YAML::Node s = has_db ? direct["sinr_db"] : direct["sinr_linear"];
  check_keys(s, where, {"nos", "os", "cm", "cm_dl"});
  auto to_db = [&](double v) {
    if (has_db) return v;
    if (!(v > 0.0)) throw ConfigError("linear SINR must be positive", {where});
    return radio::linear_to_db(v);
  };
  d.sinr_nos_db = to_db(require<double>(s, "nos", where));
  if (!s["os"]) throw ConfigError("missing required key " + where + ".os", {where + ".os"});
  for (double v : list_or_scalar(s["os"], where + ".os")) d.sinr_os_db.push_back(to_db(v));
  d.sinr_cm_db = to_db(require<double>(s, "cm", where));
  if (s["cm_dl"]) d.sinr_cm_dl_db = to_db(read<double>(s["cm_dl"], "cm_dl", where));
}

DirectSpec read_direct(const YAML::Node& n) {
  const std::string where = "scenario.direct";
  check_keys(n, where,
             {"ber_target", "sinr_db", "sinr_linear", "bw_ul", "bw_dl", "cm_dl_prefactor_corrected"});
  DirectSpec d;
  d.ber_target = require<double>(n, "ber_target", where);
  read_sinrs(n, d);
  d.bw_ul = get<double>(n, "bw_ul", where, 1.0);
  d.bw_dl = get<double>(n, "bw_dl", where, 1.0);
  d.cm_dl_prefactor_corrected = get<bool>(n, "cm_dl_prefactor_corrected", where, false);
  return d;
}

GeometricSpec read_geometric(const YAML::Node& n) {
  const std::string where = "scenario.geometric";
  check_keys(n, where,
             {"cell_radius", "cluster_radius", "n_cues", "k_const", "path_loss_exp",
              "rayleigh_fading", "shadow_sigma_db", "p_nos", "p_os", "p_cm", "noise_power",
              "interference_power", "ber_target", "bw_ul", "bw_dl", "cm_dl_prefactor_corrected",
              "rng_seed"});
  GeometricSpec g;
  g.cell_radius = get(n, "cell_radius", where, g.cell_radius);
  g.cluster_radius = get(n, "cluster_radius", where, g.cluster_radius);
  g.n_cues = get(n, "n_cues", where, g.n_cues);
  g.k_const = get(n, "k_const", where, g.k_const);
  g.path_loss_exp = get(n, "path_loss_exp", where, g.path_loss_exp);
  g.rayleigh_fading = get(n, "rayleigh_fading", where, g.rayleigh_fading);
  g.shadow_sigma_db = get(n, "shadow_sigma_db", where, g.shadow_sigma_db);
  g.p_nos = get(n, "p_nos", where, g.p_nos);
  g.p_os = get(n, "p_os", where, g.p_os);
  g.p_cm = get(n, "p_cm", where, g.p_cm);
  g.noise_power = get(n, "noise_power", where, g.noise_power);
  g.interference_power = get(n, "interference_power", where, g.interference_power);
  g.ber_target = get(n, "ber_target", where, g.ber_target);
  g.bw_ul = get(n, "bw_ul", where, g.bw_ul);
  g.bw_dl = get(n, "bw_dl", where, g.bw_dl);
  g.cm_dl_prefactor_corrected = get(n, "cm_dl_prefactor_corrected", where, g.cm_dl_prefactor_corrected);
  g.rng_seed = get<std::uint64_t>(n, "rng_seed", where, g.rng_seed);
  if (!(g.path_loss_exp >= 2.0 && g.path_loss_exp <= 6.0)) {
    throw ConfigError("path_loss_exp must lie in [2, 6]", {where + ".path_loss_exp"});
  }
  return g;
}

MarketSpec read_market(const YAML::Node& n) {
  const std::string where = "market";
  if (!n) throw ConfigError("missing market section", {"market"});
  check_keys(n, where, {"unit_label", "demand_slope", "supply_slopes", "unit_costs", "revenues"});
  MarketSpec m;
  m.unit_label = get<std::string>(n, "unit_label", where, m.unit_label);
  m.demand_slope = require<double>(n, "demand_slope", where);
  m.supply_slopes = require<std::vector<double>>(n, "supply_slopes", where);
  if (n["unit_costs"]) m.unit_costs = read<std::vector<double>>(n["unit_costs"], "unit_costs", where);
  if (n["revenues"]) m.revenues = read<std::vector<double>>(n["revenues"], "revenues", where);
  return m;
}

}  // namespace

LearningParams LearningSection::resolve(std::size_t n_sps) const {
  LearningParams p;
  p.rate_demand = rate_demand;
  p.rate_supply = rate_supply.empty() ? std::vector<double>(n_sps, rate_supply_scalar) : rate_supply;
  p.max_steps = max_steps;
  p.convergence_tol = convergence_tol;
  p.validate(n_sps);
  return p;
}

YAML::Node load_yaml_file(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open scenario file " + path, {"--scenario"});
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot parse scenario file " + path + ": " + e.what(), {"--scenario"});
  }
}

void apply_override(YAML::Node& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like dot.path=value: " + assignment, {assignment});
  }
  const std::string path = assignment.substr(0, eq);
  const std::vector<std::string> parts = split(path, '.');
  YAML::Node value;
  try {
    value = YAML::Load(assignment.substr(eq + 1));
  } catch (const YAML::Exception&) {
    throw ConfigError("cannot parse override value for " + path, {path});
  }

  YAML::Node cur;
  cur.reset(root);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string& seg = parts[k];
    const YAML::Node& view = cur;
    YAML::Node child;
    if (view.IsMap() && view[seg]) {
      child.reset(view[seg]);
    } else if (view.IsSequence()) {
      std::size_t idx = 0;
      const auto res = std::from_chars(seg.data(), seg.data() + seg.size(), idx);
      if (res.ec != std::errc{} || res.ptr != seg.data() + seg.size() || idx >= view.size()) {
        throw ConfigError("override path does not exist: " + path, {path});
      }
      child.reset(view[idx]);
    } else {
      throw ConfigError("override path does not exist: " + path, {path});
    }
    if (k + 1 == parts.size()) {
      child = value;  // assigns through to the tree
    } else {
      cur.reset(child);
    }
  }
}

RunConfig parse_run_config(const YAML::Node& root) {
  check_keys(root, "", {"scenario", "market", "learning", "baseline", "sweep"});
  RunConfig rc;
  const YAML::Node sc = root["scenario"];
  if (!sc) throw ConfigError("missing scenario section", {"scenario"});
  check_keys(sc, "scenario", {"mode", "direct", "geometric"});
  const auto mode = require<std::string>(sc, "mode", "scenario");
  if (mode == "direct") {
    rc.scenario.mode = ScenarioMode::direct;
    if (!sc["direct"]) throw ConfigError("direct mode needs scenario.direct", {"scenario.direct"});
    rc.scenario.direct = read_direct(sc["direct"]);
  } else if (mode == "geometric") {
    rc.scenario.mode = ScenarioMode::geometric;
    if (!sc["geometric"]) {
      throw ConfigError("geometric mode needs scenario.geometric", {"scenario.geometric"});
    }
    rc.scenario.geometric = read_geometric(sc["geometric"]);
  } else {
    throw ConfigError("scenario.mode must be direct or geometric", {"scenario.mode"});
  }
  rc.scenario.market = read_market(root["market"]);

  if (const YAML::Node l = root["learning"]) {
    check_keys(l, "learning", {"rate_demand", "rate_supply", "max_steps", "convergence_tol"});
    rc.learning.rate_demand = get(l, "rate_demand", "learning", rc.learning.rate_demand);
    if (l["rate_supply"]) {
      const auto rates = list_or_scalar(l["rate_supply"], "learning.rate_supply");
      if (l["rate_supply"].IsSequence()) {
        rc.learning.rate_supply = rates;
      } else {
        rc.learning.rate_supply_scalar = rates.front();
      }
    }
    rc.learning.max_steps = get(l, "max_steps", "learning", rc.learning.max_steps);
    rc.learning.convergence_tol = get(l, "convergence_tol", "learning", rc.learning.convergence_tol);
  }
  if (const YAML::Node b = root["baseline"]) {
    check_keys(b, "baseline", {"step_sizes", "probe"});
    if (b["step_sizes"]) rc.baseline.step_sizes = list_or_scalar(b["step_sizes"], "baseline.step_sizes");
    rc.baseline.probe = get(b, "probe", "baseline", rc.baseline.probe);
    if (rc.baseline.step_sizes.empty()) {
      throw ConfigError("baseline.step_sizes must not be empty", {"baseline.step_sizes"});
    }
  }
  if (const YAML::Node s = root["sweep"]) {
    check_keys(s, "sweep", {"taus"});
    if (s["taus"]) rc.sweep_taus = list_or_scalar(s["taus"], "sweep.taus");
  }
  return rc;
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  YAML::Node root = load_yaml_file(path);
  for (const auto& o : overrides) apply_override(root, o);
  return parse_run_config(root);
}

}  // namespace bwauction::cli
