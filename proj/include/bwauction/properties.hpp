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

// Randomized invariant suites shared by the validate command and the tests.
// Every case is generated from its own seed, mix_seed(base, index), so a
// failing case can be replayed from the (property, seed) pair alone.

#ifndef BWAUCTION_PROPERTIES_HPP
#define BWAUCTION_PROPERTIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bwauction/equilibrium.hpp"
#include "bwauction/learning.hpp"
#include "bwauction/market.hpp"
#include "bwauction/rng.hpp"

namespace bwauction {

using PriceFunction = std::function<double(const AuctionConfig&, const StrategyVector&)>;

struct RandomConfigRanges {
  std::size_t min_cues = 1;  // N; the auction has N + 2 providers
  std::size_t max_cues = 5;
  double min_slope = 0.1;
  double max_slope = 10.0;
  double max_cost = 10.0;
  double max_density = 20.0;  // R_i T_i
  double intercept_bound = 100.0;
};

inline AuctionConfig random_config(Rng& rng, const RandomConfigRanges& r = {}) {
  const std::size_t n = static_cast<std::size_t>(rng.uniform_int(r.min_cues, r.max_cues)) + 2;
  AuctionConfig cfg;
  cfg.demand_slope = rng.uniform(r.min_slope, r.max_slope);
  for (std::size_t i = 0; i < n; ++i) {
    cfg.supply_slopes.push_back(rng.uniform(r.min_slope, r.max_slope));
    cfg.unit_costs.push_back(rng.uniform(0.0, r.max_cost));
    cfg.revenues.push_back(1.0);
    cfg.throughputs.push_back(rng.uniform(0.0, r.max_density));
  }
  return cfg;
}

inline StrategyVector random_strategy(Rng& rng, std::size_t n_sps, double bound) {
  StrategyVector s;
  for (std::size_t i = 0; i < n_sps; ++i) s.supply_intercepts.push_back(rng.uniform(-bound, bound));
  s.demand_intercept = rng.uniform(-bound, bound);
  return s;
}

inline std::string describe(const AuctionConfig& cfg, const StrategyVector& s) {
  std::ostringstream os;
  os.precision(17);
  os << "demand_slope=" << cfg.demand_slope;
  auto list = [&](const char* name, const std::vector<double>& v) {
    os << ' ' << name << "=[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  list("supply_slopes", cfg.supply_slopes);
  list("unit_costs", cfg.unit_costs);
  list("revenues", cfg.revenues);
  list("throughputs", cfg.throughputs);
  list("strategy", s.flat());
  return os.str();
}

/// Mutation hooks for checking that the suites can fail.
enum class Mutation { none, clearing_price_offset };

inline double mutated_clearing_price(const AuctionConfig& cfg, const StrategyVector& s) {
  const double p = clearing_price(cfg, s);
  return p + 1e-3 * (1.0 + std::abs(p));
}

struct CaseOutcome {
  bool passed = true;
  std::string detail;
};

struct FailingCase {
  std::string property;
  std::uint64_t base_seed = 0;
  std::size_t index = 0;
  std::uint64_t case_seed = 0;
  Mutation mutation = Mutation::none;
  std::string detail;
};

struct PropertyResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::optional<FailingCase> first_failure;
};

// -- individual cases -------------------------------------------------------

/// |b^D - sum b_i| <= 1e-9 max(1, |b^D|).
inline CaseOutcome market_balance_case(std::uint64_t case_seed, Mutation mutation = Mutation::none) {
  Rng rng(case_seed);
  const AuctionConfig cfg = random_config(rng);
  const StrategyVector s = random_strategy(rng, cfg.n_sps(), 100.0);
  const double p = mutation == Mutation::clearing_price_offset ? mutated_clearing_price(cfg, s)
                                                               : clearing_price(cfg, s);
  const Allocation a = allocations(cfg, s, p);
  double supply = 0.0;
  for (double b : a.supply_bws) supply += b;
  const double imbalance = std::abs(a.demand_bw - supply);
  const double bound = 1e-9 * std::max(1.0, std::abs(a.demand_bw));
  if (imbalance <= bound) return {};
  std::ostringstream os;
  os.precision(17);
  os << "imbalance=" << imbalance << " bound=" << bound << ' ' << describe(cfg, s);
  return {false, os.str()};
}

/// Largest payoff gain any single player gets by moving its own intercept
/// to a point of the grid l_k + j * spacing, |j| <= count.
inline double grid_probe_improvement(const AuctionConfig& cfg, const StrategyVector& s,
                                     Player who, double spacing = 1e-3, int count = 1000) {
  const double base = player_payoff(cfg, s, who);
  StrategyVector probe = s;
  double best = 0.0;
  for (int j = -count; j <= count; ++j) {
    if (j == 0) continue;
    probe[who] = s[who] + spacing * j;
    best = std::max(best, player_payoff(cfg, probe, who) - base);
  }
  return best;
}

/// Oracle fixed point on a random configuration is a grid-probe Nash point.
inline CaseOutcome oracle_nash_case(std::uint64_t case_seed) {
  Rng rng(case_seed);
  const AuctionConfig cfg = random_config(rng);
  const StrategyVector s0 = default_initial_strategies(cfg);
  std::ostringstream os;
  os.precision(17);
  try {
    const NeSolution sol = oracle_fixed_point(cfg, s0);
    double worst = 0.0;
    for (std::size_t k = 0; k < cfg.n_players(); ++k)
      worst = std::max(worst, grid_probe_improvement(cfg, sol.strategies,
                                                     Player::from_flat(k, cfg.n_sps())));
    if (worst <= 1e-6) return {};
    os << "grid_improvement=" << worst << ' ' << describe(cfg, sol.strategies);
  } catch (const Error& e) {
    os << "error=" << e.what() << ' ' << describe(cfg, s0);
  }
  return {false, os.str()};
}

/// Profiles whose learning targets equal the profile itself make
/// run_learning stop at step 1. Construction: equal provider slopes L,
/// K = 1/L, every intercept equal to q, and C = q (K L^D - 1) / L^D.
inline CaseOutcome fixed_point_case(std::uint64_t case_seed) {
  Rng rng(case_seed);
  AuctionConfig cfg = random_config(rng);
  const double slope = cfg.supply_slopes.front();
  std::fill(cfg.supply_slopes.begin(), cfg.supply_slopes.end(), slope);
  const double q = rng.uniform(-100.0, 100.0);
  StrategyVector s0{std::vector<double>(cfg.n_sps(), q), q};
  const double k = 1.0 / slope;
  const Estimates est{k, q * (k * cfg.demand_slope - 1.0) / cfg.demand_slope};
  const double tau = rng.uniform(0.05, 1.0);
  try {
    const Trajectory t = run_learning(cfg, LearningParams::uniform(cfg.n_sps(), tau, 20, 1e-9),
                                      s0, LearningOptions{est});
    if (t.converged && t.convergence_step == 1u) return {};
    return {false, "did not stop at step 1: " + describe(cfg, s0)};
  } catch (const Error& e) {
    return {false, std::string("error=") + e.what() + ' ' + describe(cfg, s0)};
  }
}

/// K changes only on odd steps and C only on even steps.
inline CaseOutcome alternation_case(std::uint64_t case_seed) {
  Rng rng(case_seed);
  const AuctionConfig cfg = random_config(rng);
  const double tau = rng.uniform(0.05, 1.0);
  const StrategyVector s0 = default_initial_strategies(cfg);
  auto [traj, diverged] = run_capturing_divergence([&] {
    return run_learning(cfg, LearningParams::uniform(cfg.n_sps(), tau, 12, 1e-12), s0);
  });
  for (std::size_t r = 1; r < traj.records.size(); ++r) {
    const TrajectoryRecord& cur = traj.records[r];
    const TrajectoryRecord& prev = traj.records[r - 1];
    const bool odd = cur.step % 2 == 1;
    const bool k_same = std::equal_to<double>{}(cur.k_est, prev.k_est) ||
                        (std::isnan(cur.k_est) && std::isnan(prev.k_est));
    const bool c_same = std::equal_to<double>{}(cur.c_est, prev.c_est) ||
                        (std::isnan(cur.c_est) && std::isnan(prev.c_est));
    if ((odd && !c_same) || (!odd && !k_same) || (cur.guard_held && !(k_same && c_same))) {
      return {false, "estimate refreshed on the wrong parity at step " +
                         std::to_string(cur.step) + ": " + describe(cfg, s0)};
    }
  }
  return {};
}

// -- suites -----------------------------------------------------------------

inline CaseOutcome run_case(const std::string& property, std::uint64_t case_seed,
                            Mutation mutation = Mutation::none) {
  if (property == "market_balance") return market_balance_case(case_seed, mutation);
  if (property == "oracle_nash") return oracle_nash_case(case_seed);
  if (property == "fixed_point") return fixed_point_case(case_seed);
  if (property == "alternation") return alternation_case(case_seed);
  throw std::invalid_argument("unknown property: " + property);
}

inline PropertyResult run_property(const std::string& property, std::uint64_t base_seed,
                                   std::size_t cases, Mutation mutation = Mutation::none) {
  PropertyResult res;
  res.name = property;
  for (std::size_t i = 0; i < cases; ++i) {
    const std::uint64_t cs = mix_seed(base_seed, i);
    CaseOutcome out = run_case(property, cs, mutation);
    if (out.passed) {
      ++res.passed;
    } else {
      ++res.failed;
      if (!res.first_failure)
        res.first_failure = FailingCase{property, base_seed, i, cs, mutation, out.detail};
    }
  }
  return res;
}

struct SuiteSizes {
  std::size_t market_balance = 1000;
  std::size_t oracle_nash = 25;
  std::size_t fixed_point = 200;
  std::size_t alternation = 200;
};

inline std::vector<PropertyResult> run_all_properties(std::uint64_t seed, const SuiteSizes& sizes = {},
                                                      Mutation mutation = Mutation::none) {
  return {run_property("market_balance", seed, sizes.market_balance, mutation),
          run_property("oracle_nash", seed, sizes.oracle_nash, mutation),
          run_property("fixed_point", seed, sizes.fixed_point, mutation),
          run_property("alternation", seed, sizes.alternation, mutation)};
}

}  // namespace bwauction

#endif  // BWAUCTION_PROPERTIES_HPP
