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

// Builds AuctionConfig instances from direct link parameters or from a
// randomly drawn single-cell layout.

#ifndef BWAUCTION_SCENARIO_HPP
#define BWAUCTION_SCENARIO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bwauction/errors.hpp"
#include "bwauction/market.hpp"
#include "bwauction/radio.hpp"
#include "bwauction/rng.hpp"

namespace bwauction {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct CellGeometry {
  double cell_radius = 0.0;
  Point bs_position{};
  std::vector<Point> cue_positions;
  Point d2d_tx_position{};
  Point d2d_rx_position{};
  double cluster_radius = 0.0;
};

/// Market-side parameters shared by both scenario modes. Costs and revenues
/// are optional here so that their absence can be reported by name.
struct MarketSpec {
  double demand_slope = 0.0;
  std::vector<double> supply_slopes;
  std::optional<std::vector<double>> unit_costs;
  std::optional<std::vector<double>> revenues;
  std::string unit_label = "abstract";
};

struct DirectSpec {
  double ber_target = 1e-4;
  double sinr_nos_db = 0.0;
  std::vector<double> sinr_os_db;
  double sinr_cm_db = 0.0;
  /// When set, the base-station relay uses the two-leg throughput with
  /// sinr_cm_db as uplink and this as downlink.
  std::optional<double> sinr_cm_dl_db;
  double bw_ul = 1.0;
  double bw_dl = 1.0;
  bool cm_dl_prefactor_corrected = false;
};

struct GeometricSpec {
  double cell_radius = 500.0;
  double cluster_radius = 50.0;
  std::size_t n_cues = 1;
  double k_const = 1.0;
  double path_loss_exp = 3.5;
  bool rayleigh_fading = true;
  double shadow_sigma_db = 8.0;
  double p_nos = 0.1;
  double p_os = 0.1;
  double p_cm = 0.1;
  double noise_power = 1e-13;
  double interference_power = 0.0;
  double ber_target = 1e-4;
  double bw_ul = 1.0;
  double bw_dl = 1.0;
  bool cm_dl_prefactor_corrected = false;
  std::uint64_t rng_seed = 1;
};

enum class ScenarioMode { direct, geometric };

struct ScenarioSpec {
  ScenarioMode mode = ScenarioMode::direct;
  MarketSpec market;
  std::optional<DirectSpec> direct;
  std::optional<GeometricSpec> geometric;
};

namespace detail {

inline AuctionConfig assemble(const MarketSpec& m, std::vector<double> throughputs) {
  std::vector<std::string> missing;
  if (!m.unit_costs) missing.emplace_back("market.unit_costs");
  if (!m.revenues) missing.emplace_back("market.revenues");
  if (!missing.empty()) {
    throw ConfigError("unit costs and revenues are required inputs", missing);
  }
  const std::size_t n = throughputs.size();
  std::vector<std::string> wrong;
  if (m.supply_slopes.size() != n) wrong.emplace_back("market.supply_slopes");
  if (m.unit_costs->size() != n) wrong.emplace_back("market.unit_costs");
  if (m.revenues->size() != n) wrong.emplace_back("market.revenues");
  if (!wrong.empty()) {
    throw ConfigError("scenario defines " + std::to_string(n) +
                          " providers; per-provider lists must match",
                      wrong);
  }
  AuctionConfig cfg{m.demand_slope, m.supply_slopes, *m.unit_costs, *m.revenues,
                    std::move(throughputs), m.unit_label};
  cfg.validate();
  return cfg;
}

/// Uniform over a disc of the given radius (radius drawn as R sqrt(u)).
inline Point sample_disc(Rng& rng, Point center, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

inline bool in_disc(Point p, Point center, double radius) {
  return distance(p, center) <= radius;
}

}  // namespace detail

inline AuctionConfig build_direct(const ScenarioSpec& spec) {
  if (!spec.direct) throw ConfigError("direct scenario parameters missing", {"scenario.direct"});
  const DirectSpec& d = spec.direct.value();
  const double th = radio::theta(d.ber_target);
  std::vector<double> t;
  t.push_back(radio::throughput_nos(th, radio::db_to_linear(d.sinr_nos_db)));
  for (double db : d.sinr_os_db) t.push_back(radio::throughput_os(th, radio::db_to_linear(db)));
  if (d.sinr_cm_dl_db) {
    t.push_back(radio::throughput_cm_exact(
        th, radio::db_to_linear(d.sinr_cm_db), radio::db_to_linear(*d.sinr_cm_dl_db), d.bw_ul,
        d.bw_dl,
        d.cm_dl_prefactor_corrected ? radio::CmPrefactor::per_leg
                                    : radio::CmPrefactor::shared_uplink));
  } else {
    t.push_back(radio::throughput_cm_approx(th, radio::db_to_linear(d.sinr_cm_db), d.bw_ul,
                                            d.bw_dl));
  }
  return detail::assemble(spec.market, std::move(t));
}

inline CellGeometry sample_geometry(const GeometricSpec& g, Rng& rng) {
  if (!(g.cell_radius > 0.0)) throw ConfigError("cell radius must be positive", {"scenario.geometric.cell_radius"});
  if (!(g.cluster_radius >= 0.0)) throw ConfigError("cluster radius must be non-negative", {"scenario.geometric.cluster_radius"});
  CellGeometry geo;
  geo.cell_radius = g.cell_radius;
  geo.cluster_radius = g.cluster_radius;
  geo.bs_position = {0.0, 0.0};
  for (std::size_t j = 0; j < g.n_cues; ++j)
    geo.cue_positions.push_back(detail::sample_disc(rng, geo.bs_position, g.cell_radius));
  geo.d2d_tx_position = detail::sample_disc(rng, geo.bs_position, g.cell_radius);
  constexpr int kMaxTries = 10000;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxTries) {
      throw GeometryError("could not place the D2D receiver inside the cell after " +
                          std::to_string(kMaxTries) + " draws");
    }
    const Point rx = detail::sample_disc(rng, geo.d2d_tx_position, g.cluster_radius);
    if (detail::in_disc(rx, geo.bs_position, g.cell_radius)) {
      geo.d2d_rx_position = rx;
      break;
    }
  }
  return geo;
}

/// Draws one link realization: unit-mean exponential Rayleigh power gain and
/// unit-median log-normal shadowing.
inline radio::ChannelDraw draw_channel(const GeometricSpec& g, Rng& rng, double dist) {
  radio::ChannelDraw ch;
  ch.k_const = g.k_const;
  ch.distance = dist;
  ch.path_loss_exp = g.path_loss_exp;
  ch.rayleigh_gain = g.rayleigh_fading ? rng.exponential() : 1.0;
  ch.shadow_gain = g.shadow_sigma_db > 0.0 ? radio::db_to_linear(g.shadow_sigma_db * rng.normal())
                                           : 1.0;
  return ch;
}

/// The link budget implied by one geometry and fading realization.
///   NOS: D2D tx -> D2D rx, with interference.
///   OS j: D2D tx -> CUE j (the SNR at the CUE), no interference.
///   CM: D2D tx -> BS uplink and BS -> D2D rx downlink, both at P_CM.
inline radio::LinkBudget link_budget(const GeometricSpec& g, const CellGeometry& geo, Rng& rng) {
  radio::LinkBudget lb;
  lb.ber_target = g.ber_target;
  lb.bw_ul = g.bw_ul;
  lb.bw_dl = g.bw_dl;
  auto link_sinr = [&](Point a, Point b, double power, double interference) {
    const double gain = radio::channel_gain(draw_channel(g, rng, distance(a, b)));
    return radio::sinr({power, g.noise_power, interference}, gain);
  };
  lb.sinr_nos = link_sinr(geo.d2d_tx_position, geo.d2d_rx_position, g.p_nos, g.interference_power);
  for (const Point& cue : geo.cue_positions)
    lb.sinr_os.push_back(link_sinr(geo.d2d_tx_position, cue, g.p_os, 0.0));
  lb.sinr_cm_ul = link_sinr(geo.d2d_tx_position, geo.bs_position, g.p_cm, 0.0);
  lb.sinr_cm_dl = link_sinr(geo.bs_position, geo.d2d_rx_position, g.p_cm, 0.0);
  return lb;
}

inline AuctionConfig build_geometric(const ScenarioSpec& spec, Rng& rng) {
  if (!spec.geometric) {
    throw ConfigError("geometric scenario parameters missing", {"scenario.geometric"});
  }
  const GeometricSpec& g = spec.geometric.value();
  const CellGeometry geo = sample_geometry(g, rng);
  const radio::LinkBudget lb = link_budget(g, geo, rng);
  return detail::assemble(spec.market,
                          radio::throughputs(lb, g.cm_dl_prefactor_corrected
                                                     ? radio::CmPrefactor::per_leg
                                                     : radio::CmPrefactor::shared_uplink));
}

/// Dispatches on the mode; geometric scenarios draw from their own seed.
inline AuctionConfig build_config(const ScenarioSpec& spec) {
  if (spec.mode == ScenarioMode::direct) return build_direct(spec);
  if (!spec.geometric) {
    throw ConfigError("geometric scenario parameters missing", {"scenario.geometric"});
  }
  Rng rng(spec.geometric->rng_seed);
  return build_geometric(spec, rng);
}

/// Reference setup: provider slopes (0.6, 0.45, 0.6), buyer slope 0.5,
/// SINRs 20/30/10 dB, BER 1e-4, equal uplink/downlink bandwidth. Costs
/// (1, 1, 1.5) and revenues (1, 1, 1) are calibration defaults in abstract
/// units.
inline ScenarioSpec reference_scenario() {
  ScenarioSpec spec;
  spec.mode = ScenarioMode::direct;
  spec.market.demand_slope = 0.5;
  spec.market.supply_slopes = {0.6, 0.45, 0.6};
  spec.market.unit_costs = std::vector<double>{1.0, 1.0, 1.5};
  spec.market.revenues = std::vector<double>{1.0, 1.0, 1.0};
  spec.market.unit_label = "calibration defaults (abstract units)";
  DirectSpec d;
  d.ber_target = 1e-4;
  d.sinr_nos_db = 20.0;
  d.sinr_os_db = {30.0};
  d.sinr_cm_db = 10.0;
  spec.direct = d;
  return spec;
}

}  // namespace bwauction

#endif  // BWAUCTION_SCENARIO_HPP
