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

// One round of the uniform-price bandwidth auction: linear demand and supply
// curves, market clearing, allocations and payoffs.
//
// Curves are p = -L^D b^D + l^D for the buyer and p = L_i b_i + l_i for each
// provider. Slopes L are fixed constants; intercepts l are the strategies.

#ifndef BWAUCTION_MARKET_HPP
#define BWAUCTION_MARKET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bwauction/errors.hpp"

namespace bwauction {

struct AuctionConfig {
  double demand_slope = 1.0;
  std::vector<double> supply_slopes;
  std::vector<double> unit_costs;
  std::vector<double> revenues;
  std::vector<double> throughputs;
  std::string unit_label = "abstract";

  std::size_t n_sps() const noexcept { return supply_slopes.size(); }
  std::size_t n_players() const noexcept { return n_sps() + 1; }

  /// Utility density R_i * T_i of provider i's bandwidth for the buyer.
  double utility_density(std::size_t i) const { return revenues[i] * throughputs[i]; }

  void validate() const {
    const std::size_t n = n_sps();
    if (n == 0) throw ConfigError("auction needs at least one provider", {"supply_slopes"});
    std::vector<std::string> bad;
    if (unit_costs.size() != n) bad.emplace_back("unit_costs");
    if (revenues.size() != n) bad.emplace_back("revenues");
    if (throughputs.size() != n) bad.emplace_back("throughputs");
    if (!bad.empty()) throw ConfigError("per-provider lists must all have length n_sps", bad);

    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    auto non_negative = [](double x) { return std::isfinite(x) && x >= 0.0; };
    if (!positive(demand_slope)) bad.emplace_back("demand_slope");
    if (!std::all_of(supply_slopes.begin(), supply_slopes.end(), positive))
      bad.emplace_back("supply_slopes");
    if (!std::all_of(unit_costs.begin(), unit_costs.end(), non_negative))
      bad.emplace_back("unit_costs");
    if (!std::all_of(revenues.begin(), revenues.end(), non_negative))
      bad.emplace_back("revenues");
    if (!std::all_of(throughputs.begin(), throughputs.end(), non_negative))
      bad.emplace_back("throughputs");
    if (!bad.empty()) throw ConfigError("slopes must be positive, other lists non-negative", bad);
  }
};

/// Identifies a player: one of the providers, or the D2D buyer.
class Player {
 public:
  static constexpr Player supplier(std::size_t i) noexcept { return Player(i); }
  static constexpr Player demand() noexcept { return Player(kDemand); }

  constexpr bool is_demand() const noexcept { return index_ == kDemand; }
  constexpr std::size_t supplier_index() const noexcept { return index_; }

  /// Position in the flat (l_1 ... l_n, l^D) ordering.
  constexpr std::size_t flat_index(std::size_t n_sps) const noexcept {
    return is_demand() ? n_sps : index_;
  }
  static constexpr Player from_flat(std::size_t k, std::size_t n_sps) noexcept {
    return k == n_sps ? demand() : supplier(k);
  }

  std::string label() const {
    return is_demand() ? std::string("D") : "S" + std::to_string(index_ + 1);
  }

  friend constexpr bool operator==(Player, Player) = default;

 private:
  static constexpr std::size_t kDemand = std::numeric_limits<std::size_t>::max();
  constexpr explicit Player(std::size_t i) noexcept : index_(i) {}
  std::size_t index_;
};

struct StrategyVector {
  std::vector<double> supply_intercepts;
  double demand_intercept = 0.0;

  std::size_t n_sps() const noexcept { return supply_intercepts.size(); }

  double& operator[](Player p) {
    return p.is_demand() ? demand_intercept : supply_intercepts.at(p.supplier_index());
  }
  double operator[](Player p) const {
    return p.is_demand() ? demand_intercept : supply_intercepts.at(p.supplier_index());
  }

  /// (l_1, ..., l_n, l^D).
  std::vector<double> flat() const {
    std::vector<double> out(supply_intercepts);
    out.push_back(demand_intercept);
    return out;
  }
  static StrategyVector from_flat(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("StrategyVector::from_flat: empty input");
    return StrategyVector{{values.begin(), values.end() - 1}, values.back()};
  }

  bool all_finite() const {
    return std::isfinite(demand_intercept) &&
           std::all_of(supply_intercepts.begin(), supply_intercepts.end(),
                       [](double x) { return std::isfinite(x); });
  }

  friend bool operator==(const StrategyVector&, const StrategyVector&) = default;
};

/// Max-norm distance between two profiles of the same size.
inline double max_abs_diff(const StrategyVector& a, const StrategyVector& b) {
  double d = std::abs(a.demand_intercept - b.demand_intercept);
  for (std::size_t i = 0; i < a.n_sps(); ++i)
    d = std::max(d, std::abs(a.supply_intercepts[i] - b.supply_intercepts.at(i)));
  return d;
}

struct Allocation {
  double demand_bw = 0.0;
  std::vector<double> supply_bws;
};

struct MarketOutcome {
  double price = 0.0;
  double demand_bw = 0.0;
  std::vector<double> supply_bws;
  double demand_payoff = 0.0;
  std::vector<double> supply_payoffs;
  std::vector<bool> negative_supply_flags;

  double payoff(Player p) const {
    return p.is_demand() ? demand_payoff : supply_payoffs.at(p.supplier_index());
  }
};

/// Sum of reciprocal slopes over all players; the clearing-price denominator.
inline double reciprocal_slope_sum(const AuctionConfig& cfg) {
  double phi = 1.0 / cfg.demand_slope;
  for (double s : cfg.supply_slopes) phi += 1.0 / s;
  return phi;
}

/// Uniform price at which total supply meets demand: the slope-weighted
/// mean of all intercepts.
inline double clearing_price(const AuctionConfig& cfg, const StrategyVector& s) {
  double num = s.demand_intercept / cfg.demand_slope;
  double den = 1.0 / cfg.demand_slope;
  for (std::size_t i = 0; i < cfg.n_sps(); ++i) {
    num += s.supply_intercepts[i] / cfg.supply_slopes[i];
    den += 1.0 / cfg.supply_slopes[i];
  }
  return num / den;
}

/// Inverts both curves at `price`. Negative bandwidths are returned as-is;
/// the linear equilibrium analysis depends on the curves being unclamped.
inline Allocation allocations(const AuctionConfig& cfg, const StrategyVector& s, double price) {
  Allocation a;
  a.demand_bw = (s.demand_intercept - price) / cfg.demand_slope;
  a.supply_bws.resize(cfg.n_sps());
  for (std::size_t i = 0; i < cfg.n_sps(); ++i)
    a.supply_bws[i] = (price - s.supply_intercepts[i]) / cfg.supply_slopes[i];
  return a;
}

/// Buyer utility sum_i R_i T_i b_i minus the payment p b^D.
inline double demand_payoff(const AuctionConfig& cfg, double price, double demand_bw,
                            std::span<const double> supply_bws) {
  double utility = 0.0;
  for (std::size_t i = 0; i < cfg.n_sps(); ++i) utility += cfg.utility_density(i) * supply_bws[i];
  return utility - price * demand_bw;
}

inline double supply_payoff(const AuctionConfig& cfg, std::size_t i, double price, double bw) {
  if (i >= cfg.n_sps()) throw std::out_of_range("supply_payoff: provider index out of range");
  return (price - cfg.unit_costs[i]) * bw;
}

inline MarketOutcome play_round(const AuctionConfig& cfg, const StrategyVector& s) {
  MarketOutcome out;
  out.price = clearing_price(cfg, s);
  Allocation a = allocations(cfg, s, out.price);
  out.demand_bw = a.demand_bw;
  out.supply_bws = std::move(a.supply_bws);
  out.demand_payoff = demand_payoff(cfg, out.price, out.demand_bw, out.supply_bws);
  out.supply_payoffs.resize(cfg.n_sps());
  out.negative_supply_flags.resize(cfg.n_sps());
  for (std::size_t i = 0; i < cfg.n_sps(); ++i) {
    out.supply_payoffs[i] = supply_payoff(cfg, i, out.price, out.supply_bws[i]);
    out.negative_supply_flags[i] = out.supply_bws[i] < 0.0;
  }
  return out;
}

/// Payoff of one player only; same arithmetic as play_round without the
/// allocation bookkeeping for the other providers' payoffs.
inline double player_payoff(const AuctionConfig& cfg, const StrategyVector& s, Player who) {
  const double p = clearing_price(cfg, s);
  if (!who.is_demand()) {
    const std::size_t i = who.supplier_index();
    return supply_payoff(cfg, i, p, (p - s.supply_intercepts[i]) / cfg.supply_slopes[i]);
  }
  double utility = 0.0;
  for (std::size_t i = 0; i < cfg.n_sps(); ++i)
    utility += cfg.utility_density(i) * ((p - s.supply_intercepts[i]) / cfg.supply_slopes[i]);
  return utility - p * ((s.demand_intercept - p) / cfg.demand_slope);
}

}  // namespace bwauction

#endif  // BWAUCTION_MARKET_HPP
