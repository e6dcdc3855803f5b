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

// Incomplete-information repeated auction. Every round the broker clears
// the market and announces the price; each player then moves a fraction tau
// of the way towards its myopic best-response target. The buyer's targets
// depend on two market aggregates K(t) and C(t) it cannot observe, so it
// re-estimates K on odd steps and C on even steps from a finite difference
// of its own payoff.
//
// fixed_point_report() shows how the update rules behave at the exact
// equilibrium.

#ifndef BWAUCTION_LEARNING_HPP
#define BWAUCTION_LEARNING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bwauction/errors.hpp"
#include "bwauction/market.hpp"

namespace bwauction {

struct LearningParams {
  double rate_demand = 0.6;
  std::vector<double> rate_supply;
  std::size_t max_steps = 100;
  double convergence_tol = 1e-3;

  static LearningParams uniform(std::size_t n_sps, double tau, std::size_t max_steps = 100,
                                double convergence_tol = 1e-3) {
    return LearningParams{tau, std::vector<double>(n_sps, tau), max_steps, convergence_tol};
  }

  void validate(std::size_t n_sps) const {
    auto rate_ok = [](double r) { return r > 0.0 && r <= 1.0; };
    std::vector<std::string> bad;
    if (!rate_ok(rate_demand)) bad.emplace_back("learning.rate_demand");
    if (rate_supply.size() != n_sps || !std::all_of(rate_supply.begin(), rate_supply.end(), rate_ok))
      bad.emplace_back("learning.rate_supply");
    if (!(convergence_tol > 0.0)) bad.emplace_back("learning.convergence_tol");
    if (!bad.empty()) throw ConfigError("learning rates must lie in (0, 1]", bad);
  }
};

/// The buyer's view at the end of round t.
struct LearningState {
  StrategyVector strategies;  // l(t)
  double price = 0.0;         // p(t)
  double demand_payoff = 0.0; // pi_D(t)
  double k_est = 0.0;
  double c_est = 0.0;
  /// Round t-1 data for the finite difference; empty in round 0.
  std::optional<double> prev_demand_payoff;
  std::optional<double> prev_demand_intercept;
  std::size_t step = 0;
};

struct Estimates {
  double k = 0.0;
  double c = 0.0;
};

struct EstimateResult {
  double value = 0.0;
  bool held = false;  // guard tripped; value is the previous estimate
};

inline constexpr double kFiniteDifferenceGuard = 1e-12;
inline constexpr double kDivergenceLimit = 1e12;

/// Supplier target p + (p - L_i)(1 - K L_i), relaxed by tau.
inline double supplier_update(const AuctionConfig& cfg, const LearningState& st, std::size_t i,
                              double tau) {
  const double p = st.price;
  const double slope = cfg.supply_slopes.at(i);
  const double target = p + (p - slope) * (1.0 - st.k_est * slope);
  return (1.0 - tau) * st.strategies.supply_intercepts.at(i) + tau * target;
}

/// Buyer target p (2 - K L^D) + L^D C, relaxed by tau.
inline double demand_update(const AuctionConfig& cfg, const LearningState& st, double tau) {
  const double p = st.price;
  const double ld = cfg.demand_slope;
  const double target = p * (2.0 - st.k_est * ld) + ld * st.c_est;
  return (1.0 - tau) * st.strategies.demand_intercept + tau * target;
}

/// (pi_D(t) - pi_D(t-1)) / (l^D(t) - l^D(t-1)), or nothing when the
/// intercept barely moved.
inline std::optional<double> demand_marginal_payoff(const LearningState& st) {
  if (!st.prev_demand_payoff || !st.prev_demand_intercept) return std::nullopt;
  const double dl = st.strategies.demand_intercept - *st.prev_demand_intercept;
  if (std::abs(dl) < kFiniteDifferenceGuard) return std::nullopt;
  return (st.demand_payoff - *st.prev_demand_payoff) / dl;
}

/// K(t) = (2p + L^D C) / (p L^D + (L^D)^2 phi), with C frozen at c_est.
inline EstimateResult estimate_k(const LearningState& st, double demand_slope) {
  const std::optional<double> phi = demand_marginal_payoff(st);
  if (!phi) return {st.k_est, true};
  const double p = st.price;
  const double den = p * demand_slope + demand_slope * demand_slope * *phi;
  const double k = (2.0 * p + demand_slope * st.c_est) / den;
  if (!std::isfinite(k)) return {st.k_est, true};
  return {k, false};
}

/// C(t) = K (p L^D + (L^D)^2 phi - 2p) / L^D, with K frozen at k_est.
inline EstimateResult estimate_c(const LearningState& st, double demand_slope) {
  const std::optional<double> phi = demand_marginal_payoff(st);
  if (!phi) return {st.c_est, true};
  const double p = st.price;
  const double c =
      st.k_est * (p * demand_slope + demand_slope * demand_slope * *phi - 2.0 * p) / demand_slope;
  if (!std::isfinite(c)) return {st.c_est, true};
  return {c, false};
}

/// Round-0 estimates: C(0) = p(0), and K(0) from the K formula with a zero
/// finite difference, which with C = p reduces to (2 + L^D) / L^D.
inline Estimates bootstrap_estimates(const AuctionConfig& cfg, double price0) {
  return {(2.0 + cfg.demand_slope) / cfg.demand_slope, price0};
}

/// K = sum of reciprocal slopes and C = sum_i R_i T_i / L_i: the values for
/// which the buyer's target is its exact best response.
inline Estimates exact_estimates(const AuctionConfig& cfg) {
  double c = 0.0;
  for (std::size_t i = 0; i < cfg.n_sps(); ++i) c += cfg.utility_density(i) / cfg.supply_slopes[i];
  return {reciprocal_slope_sum(cfg), c};
}

/// Marginal-cost offers for providers, highest utility density for the buyer.
inline StrategyVector default_initial_strategies(const AuctionConfig& cfg) {
  StrategyVector s;
  s.supply_intercepts = cfg.unit_costs;
  s.demand_intercept = cfg.utility_density(0);
  for (std::size_t i = 1; i < cfg.n_sps(); ++i)
    s.demand_intercept = std::max(s.demand_intercept, cfg.utility_density(i));
  return s;
}

struct TrajectoryRecord {
  std::size_t step = 0;
  StrategyVector strategies;
  MarketOutcome outcome;
  double k_est = 0.0;
  double c_est = 0.0;
  bool guard_held = false;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  std::optional<std::size_t> convergence_step;
  bool converged = false;
};

/// Some intercept left the finite range; the trajectory up to and including
/// the offending step is preserved.
class Diverged : public Error {
 public:
  Diverged(const std::string& what, Trajectory trajectory)
      : Error(what), trajectory_(std::move(trajectory)) {}
  const Trajectory& trajectory() const noexcept { return trajectory_; }

 private:
  Trajectory trajectory_;
};

namespace detail {

inline bool diverged(const StrategyVector& s) {
  if (!s.all_finite()) return true;
  if (std::abs(s.demand_intercept) > kDivergenceLimit) return true;
  return std::any_of(s.supply_intercepts.begin(), s.supply_intercepts.end(),
                     [](double x) { return std::abs(x) > kDivergenceLimit; });
}

}  // namespace detail

struct LearningOptions {
  /// Replaces the bootstrap estimates in round 0.
  std::optional<Estimates> initial_estimates;
};

/// Best-response learning. Row t holds l(t), the round-t outcome and the
/// estimates formed after round t (used to produce l(t+1)). Row 0 uses the
/// bootstrap estimates; step 1 refreshes K, step 2 refreshes C, and so on.
inline Trajectory run_learning(const AuctionConfig& cfg, const LearningParams& params,
                               const StrategyVector& s0, const LearningOptions& opt = {}) {
  cfg.validate();
  params.validate(cfg.n_sps());
  const std::size_t n = cfg.n_sps();

  Trajectory traj;
  LearningState st;
  st.strategies = s0;
  MarketOutcome outcome = play_round(cfg, s0);
  st.price = outcome.price;
  st.demand_payoff = outcome.demand_payoff;
  const Estimates init = opt.initial_estimates.value_or(bootstrap_estimates(cfg, st.price));
  st.k_est = init.k;
  st.c_est = init.c;
  traj.records.push_back({0, s0, std::move(outcome), st.k_est, st.c_est, false});

  for (std::size_t t = 1; t <= params.max_steps; ++t) {
    StrategyVector next = st.strategies;
    for (std::size_t i = 0; i < n; ++i)
      next.supply_intercepts[i] = supplier_update(cfg, st, i, params.rate_supply[i]);
    next.demand_intercept = demand_update(cfg, st, params.rate_demand);

    const double change = max_abs_diff(next, st.strategies);
    MarketOutcome round = play_round(cfg, next);

    LearningState following;
    following.strategies = next;
    following.price = round.price;
    following.demand_payoff = round.demand_payoff;
    following.prev_demand_payoff = st.demand_payoff;
    following.prev_demand_intercept = st.strategies.demand_intercept;
    following.k_est = st.k_est;
    following.c_est = st.c_est;
    following.step = t;
    bool held = false;
    if (t % 2 == 1) {
      const EstimateResult k = estimate_k(following, cfg.demand_slope);
      following.k_est = k.value;
      held = k.held;
    } else {
      const EstimateResult c = estimate_c(following, cfg.demand_slope);
      following.c_est = c.value;
      held = c.held;
    }
    traj.records.push_back(
        {t, next, std::move(round), following.k_est, following.c_est, held});
    st = std::move(following);

    if (detail::diverged(next)) {
      throw Diverged("best-response learning diverged at step " + std::to_string(t),
                     std::move(traj));
    }
    if (change <= params.convergence_tol) {
      traj.converged = true;
      traj.convergence_step = t;
      break;
    }
  }
  return traj;
}

/// Parameters of the myopic gradient baseline.
struct GradientParams {
  double step_size = 0.05;
  /// Step-1 offset applied to every intercept so that a finite difference
  /// exists from step 2 on.
  double probe = 1e-2;
};

/// Myopic gradient play: every player moves by step_size times its own
/// two-point marginal-payoff estimate (pi(t) - pi(t-1)) / (l(t) - l(t-1)),
/// holding the last estimate when its intercept did not move. k_est and
/// c_est are recorded as NaN.
inline Trajectory run_gradient_baseline(const AuctionConfig& cfg, const LearningParams& params,
                                        const GradientParams& grad, const StrategyVector& s0) {
  cfg.validate();
  params.validate(cfg.n_sps());
  const std::size_t n = cfg.n_sps();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  Trajectory traj;
  traj.records.push_back({0, s0, play_round(cfg, s0), nan, nan, false});
  std::vector<double> slope_est(n + 1, 0.0);

  for (std::size_t t = 1; t <= params.max_steps; ++t) {
    const TrajectoryRecord& cur = traj.records.back();
    StrategyVector next = cur.strategies;
    bool held = false;
    if (t == 1) {
      for (std::size_t k = 0; k <= n; ++k) next[Player::from_flat(k, n)] += grad.probe;
    } else {
      const TrajectoryRecord& prev = traj.records[traj.records.size() - 2];
      for (std::size_t k = 0; k <= n; ++k) {
        const Player who = Player::from_flat(k, n);
        const double dl = cur.strategies[who] - prev.strategies[who];
        if (std::abs(dl) < kFiniteDifferenceGuard) {
          held = true;
        } else {
          slope_est[k] = (cur.outcome.payoff(who) - prev.outcome.payoff(who)) / dl;
        }
        next[who] = cur.strategies[who] + grad.step_size * slope_est[k];
      }
    }
    const double change = max_abs_diff(next, cur.strategies);
    traj.records.push_back({t, next, play_round(cfg, next), nan, nan, held});

    if (detail::diverged(next)) {
      throw Diverged("gradient baseline diverged at step " + std::to_string(t), std::move(traj));
    }
    if (change <= params.convergence_tol) {
      traj.converged = true;
      traj.convergence_step = t;
      break;
    }
  }
  return traj;
}

/// Runs a learner and returns its trajectory whether or not it diverged.
template <typename Runner>
std::pair<Trajectory, bool> run_capturing_divergence(Runner&& runner) {
  try {
    return {runner(), false};
  } catch (const Diverged& e) {
    return {e.trajectory(), true};
  }
}

/// Behaviour of the learning targets at a known equilibrium point.
struct FixedPointReport {
  StrategyVector equilibrium;
  Estimates estimates;
  /// tau = 1 targets of every player evaluated at the equilibrium, flat order.
  std::vector<double> targets;
  /// target - equilibrium, flat order.
  std::vector<double> target_offsets;
  /// max_t |l(t) - equilibrium| over a learning run seeded at the equilibrium.
  double max_run_deviation = 0.0;
  std::size_t steps_run = 0;
  bool run_diverged = false;
  double tolerance = 1e-3;
  bool within_tolerance = false;
  /// Flat index of the component with the largest run deviation.
  std::size_t worst_component = 0;
};

/// Seeds run_learning at `equilibrium` with the exact aggregates and
/// measures how far the learning dynamics drift from it.
inline FixedPointReport fixed_point_report(const AuctionConfig& cfg,
                                           const StrategyVector& equilibrium,
                                           const LearningParams& params, double tolerance = 1e-3) {
  FixedPointReport rep;
  rep.equilibrium = equilibrium;
  rep.estimates = exact_estimates(cfg);
  rep.tolerance = tolerance;

  LearningState st;
  st.strategies = equilibrium;
  st.price = clearing_price(cfg, equilibrium);
  st.k_est = rep.estimates.k;
  st.c_est = rep.estimates.c;
  const std::size_t n = cfg.n_sps();
  for (std::size_t i = 0; i < n; ++i) rep.targets.push_back(supplier_update(cfg, st, i, 1.0));
  rep.targets.push_back(demand_update(cfg, st, 1.0));
  const std::vector<double> eq = equilibrium.flat();
  for (std::size_t k = 0; k <= n; ++k) rep.target_offsets.push_back(rep.targets[k] - eq[k]);

  auto [traj, diverged] = run_capturing_divergence([&] {
    return run_learning(cfg, params, equilibrium, LearningOptions{rep.estimates});
  });
  rep.run_diverged = diverged;
  rep.steps_run = traj.records.back().step;
  for (const auto& r : traj.records) {
    const std::vector<double> f = r.strategies.flat();
    for (std::size_t k = 0; k <= n; ++k) {
      const double dev = std::isfinite(f[k]) ? std::abs(f[k] - eq[k])
                                             : std::numeric_limits<double>::infinity();
      if (dev > rep.max_run_deviation) {
        rep.max_run_deviation = dev;
        rep.worst_component = k;
      }
    }
  }
  rep.within_tolerance = !diverged && rep.max_run_deviation <= tolerance;
  return rep;
}

}  // namespace bwauction

#endif  // BWAUCTION_LEARNING_HPP
