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

// Complete-information Nash equilibrium of the intercept game, computed two
// independent ways:
//   * the closed-form linear system A l* = B from its element formulas, and
//   * a numerical best-response fixed point that maximizes each player's
//     payoff through play_round and never looks at A or B.
// compare_solutions cross-checks the two.

#ifndef BWAUCTION_EQUILIBRIUM_HPP
#define BWAUCTION_EQUILIBRIUM_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bwauction/errors.hpp"
#include "bwauction/market.hpp"

namespace bwauction {

struct NeSystem {
  Eigen::MatrixXd matrix_a;
  Eigen::VectorXd vector_b;
  double phi = 0.0;
};

enum class SolutionSource { closed_form, oracle };

inline const char* to_string(SolutionSource s) {
  return s == SolutionSource::closed_form ? "closed_form" : "oracle";
}

struct NeSolution {
  StrategyVector strategies;
  /// ||A l - B||_inf for the closed form; max best-response gap for the oracle.
  double residual = 0.0;
  SolutionSource source = SolutionSource::closed_form;
  /// |BR_k(l) - l_k| per player in flat order; empty until evaluated.
  std::vector<double> argmax_gaps;
  std::size_t iterations = 0;
  double relaxation = 1.0;
};

/// Oracle failed to settle; carries every iterate it visited.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::vector<StrategyVector> trajectory)
      : Error(what), trajectory_(std::move(trajectory)) {}
  const std::vector<StrategyVector>& trajectory() const noexcept { return trajectory_; }

 private:
  std::vector<StrategyVector> trajectory_;
};

// ---------------------------------------------------------------------------
// Closed form
// ---------------------------------------------------------------------------

/// Assembles A and B, row/column order (l_1 ... l_n, l^D).
inline NeSystem build_system(const AuctionConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_sps();
  const std::size_t d = n;  // index of the demand row/column
  const double phi = reciprocal_slope_sum(cfg);
  const double ld = cfg.demand_slope;
  const auto& ls = cfg.supply_slopes;

  NeSystem sys;
  sys.phi = phi;
  sys.matrix_a.resize(n + 1, n + 1);
  sys.vector_b.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sys.matrix_a(i, j) = i == j ? 2.0 / (phi * ls[j]) - 2.0
                                  : 2.0 / (phi * ls[j]) - ls[i] / ls[j];
    }
    sys.matrix_a(i, d) = 2.0 / (phi * ld) - ls[i] / ld;
    sys.vector_b(i) = cfg.unit_costs[i] * (1.0 - phi * ls[i]);
  }
  double density_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sys.matrix_a(d, j) = 2.0 / (phi * ls[j]) - ld;
    density_sum += cfg.utility_density(j) / ls[j];
  }
  sys.matrix_a(d, d) = 2.0 / (phi * ld) - 2.0;
  sys.vector_b(d) = -ld * density_sum;
  return sys;
}

inline constexpr double kSingularRcond = 1e-12;

/// Solves A l* = B by LU with partial pivoting. Throws NoEquilibrium when
/// the reciprocal condition estimate falls below kSingularRcond.
inline NeSolution solve_closed_form(const NeSystem& sys) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix_a);
  const double rcond = lu.rcond();
  if (!(rcond >= kSingularRcond)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", rcond);
    throw NoEquilibrium(std::string("equilibrium matrix is singular (rcond estimate ") + buf + ")");
  }
  const Eigen::VectorXd x = lu.solve(sys.vector_b);
  if (!x.allFinite()) throw NoEquilibrium("equilibrium solve produced non-finite values");

  NeSolution sol;
  sol.source = SolutionSource::closed_form;
  sol.residual = (sys.matrix_a * x - sys.vector_b).cwiseAbs().maxCoeff();
  const double bound = 1e-9 * (1.0 + sys.vector_b.cwiseAbs().maxCoeff());
  if (sol.residual > bound) {
    throw NoEquilibrium("equilibrium solve residual " + std::to_string(sol.residual) +
                        " exceeds bound");
  }
  sol.strategies = StrategyVector::from_flat(std::span<const double>(x.data(), x.size()));
  return sol;
}

// ---------------------------------------------------------------------------
// Numerical best response
// ---------------------------------------------------------------------------

struct BestResponseOptions {
  std::size_t grid_points = 101;  // odd, so the bracket has a midpoint
  double tolerance = 1e-8;
  double bracket_factor = 10.0;
  double widen_factor = 10.0;
};

namespace detail {

/// Bracket half-width: bracket_factor * max(1, max c_i, max R_i T_i, max |l_k|).
inline double bracket_scale(const AuctionConfig& cfg, const StrategyVector& s) {
  double scale = 1.0;
  for (std::size_t i = 0; i < cfg.n_sps(); ++i) {
    scale = std::max({scale, cfg.unit_costs[i], cfg.utility_density(i),
                      std::abs(s.supply_intercepts[i])});
  }
  return std::max(scale, std::abs(s.demand_intercept));
}

}  // namespace detail

/// Maximizes `who`'s payoff over its own intercept with all others fixed:
/// grid scan over a symmetric bracket, golden-section refinement, then one
/// parabolic step. Payoffs are exact quadratics in the own intercept, so the
/// parabolic step through three well-separated points recovers the vertex
/// far below the resolution of payoff comparisons.
inline double numeric_best_response(const AuctionConfig& cfg, const StrategyVector& s,
                                    Player who, const BestResponseOptions& opt = {}) {
  StrategyVector probe = s;
  double& own = probe[who];
  auto payoff_at = [&](double x) {
    own = x;
    return player_payoff(cfg, probe, who);
  };

  const std::size_t g = opt.grid_points | 1u;
  double half = opt.bracket_factor * detail::bracket_scale(cfg, s);
  for (int attempt = 0; attempt < 2; ++attempt, half *= opt.widen_factor) {
    const double lo = -half;
    const double h = 2.0 * half / static_cast<double>(g - 1);
    std::vector<double> f(g);
    for (std::size_t k = 0; k < g; ++k) f[k] = payoff_at(lo + h * static_cast<double>(k));

    // Second difference across the whole bracket: the payoff's quadratic
    // coefficient, up to rounding.
    const double span = half;
    const double second = (f.front() - 2.0 * f[g / 2] + f.back()) / (2.0 * span * span);
    const double noise = 1e-12 * (std::abs(f.front()) + std::abs(f[g / 2]) + std::abs(f.back())) /
                         (span * span);
    if (!std::isfinite(second) || second >= -noise) {
      throw NoBestResponse("payoff of player " + who.label() +
                           " is not strictly concave in its own intercept");
    }

    const std::size_t best =
        static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
    if (best == 0 || best == g - 1) continue;

    // Golden-section search on [x_{best-1}, x_{best+1}].
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo + h * static_cast<double>(best - 1);
    double b = lo + h * static_cast<double>(best + 1);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = payoff_at(c);
    double fd = payoff_at(d);
    while (b - a > opt.tolerance) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = payoff_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = payoff_at(d);
      }
    }
    const double golden = 0.5 * (a + b);

    const double fm = payoff_at(golden - h);
    const double f0 = payoff_at(golden);
    const double fp = payoff_at(golden + h);
    const double curvature = fp - 2.0 * f0 + fm;
    if (curvature < 0.0) {
      const double vertex = golden - 0.5 * h * (fp - fm) / curvature;
      const double lo_ok = lo + h * static_cast<double>(best - 1);
      const double hi_ok = lo + h * static_cast<double>(best + 1);
      if (vertex >= lo_ok && vertex <= hi_ok) return vertex;
    }
    return golden;
  }
  throw NoBestResponse("best response of player " + who.label() +
                       " lies on the edge of the widened search bracket");
}

/// |BR_k(s) - s_k| for every player, flat order.
inline std::vector<double> nash_gaps(const AuctionConfig& cfg, const StrategyVector& s,
                                     const BestResponseOptions& opt = {}) {
  const std::size_t n = cfg.n_sps();
  std::vector<double> gaps(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const Player who = Player::from_flat(k, n);
    gaps[k] = std::abs(numeric_best_response(cfg, s, who, opt) - s[who]);
  }
  return gaps;
}

inline NeSolution solve_closed_form(const AuctionConfig& cfg) {
  NeSolution sol = solve_closed_form(build_system(cfg));
  sol.argmax_gaps = nash_gaps(cfg, sol.strategies);
  return sol;
}

// ---------------------------------------------------------------------------
// Best-response fixed point
// ---------------------------------------------------------------------------

struct OracleOptions {
  std::size_t max_iterations = 10000;  // total, across relaxation restarts
  double tolerance = 1e-8;
  double gap_tolerance = 1e-6;
  /// A restart with halved relaxation is triggered once the best-response
  /// gap exceeds this multiple of the smallest gap seen so far.
  double growth_limit = 10.0;
  double min_relaxation = 1.0 / 1024.0;
  BestResponseOptions best_response{};
};

/// Synchronous (Jacobi) best-response iteration l <- l + w (BR(l) - l),
/// starting with w = 1. The undamped map has spectral radius >= 1 for most
/// configurations (exactly -1 for four symmetric players), so a growing gap
/// restarts the run from s0 with w halved. Stops once max |BR(l) - l| is at
/// most `tolerance`.
inline NeSolution oracle_fixed_point(const AuctionConfig& cfg, const StrategyVector& s0,
                                     const OracleOptions& opt = {}) {
  cfg.validate();
  const std::size_t n = cfg.n_sps();
  std::vector<StrategyVector> visited;
  std::size_t total = 0;

  for (double omega = 1.0; omega >= opt.min_relaxation; omega *= 0.5) {
    StrategyVector s = s0;
    double smallest_gap = std::numeric_limits<double>::infinity();
    bool restart = false;
    while (!restart) {
      if (total >= opt.max_iterations) {
        throw NonConvergence("best-response oracle hit the iteration cap", std::move(visited));
      }
      ++total;
      std::vector<double> target(n + 1);
      double gap = 0.0;
      for (std::size_t k = 0; k <= n; ++k) {
        const Player who = Player::from_flat(k, n);
        target[k] = numeric_best_response(cfg, s, who, opt.best_response);
        gap = std::max(gap, std::abs(target[k] - s[who]));
      }
      StrategyVector next = s;
      for (std::size_t k = 0; k <= n; ++k) {
        const Player who = Player::from_flat(k, n);
        next[who] = s[who] + omega * (target[k] - s[who]);
      }
      visited.push_back(next);

      if (gap <= opt.tolerance) {
        NeSolution sol;
        sol.strategies = std::move(next);
        sol.source = SolutionSource::oracle;
        sol.iterations = total;
        sol.relaxation = omega;
        sol.argmax_gaps = nash_gaps(cfg, sol.strategies, opt.best_response);
        sol.residual = *std::max_element(sol.argmax_gaps.begin(), sol.argmax_gaps.end());
        if (sol.residual > opt.gap_tolerance) {
          throw NonConvergence("oracle fixed point fails the best-response gap check",
                               std::move(visited));
        }
        return sol;
      }
      smallest_gap = std::min(smallest_gap, gap);
      if (!next.all_finite() || gap > opt.growth_limit * smallest_gap) restart = true;
      s = std::move(next);
    }
  }
  throw NonConvergence("best-response oracle diverged at every relaxation level",
                       std::move(visited));
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

struct DiscrepancyReport {
  std::vector<double> abs_gaps;
  /// |a - b| / max(1, |a|, |b|) per component.
  std::vector<double> rel_gaps;
  std::vector<bool> component_agrees;
  std::vector<double> argmax_gaps_a;
  std::vector<double> argmax_gaps_b;
  SolutionSource source_a = SolutionSource::closed_form;
  SolutionSource source_b = SolutionSource::oracle;
  double tolerance = 1e-6;
  bool agree = true;

  std::vector<std::size_t> disagreeing_components() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < component_agrees.size(); ++k)
      if (!component_agrees[k]) out.push_back(k);
    return out;
  }
};

inline DiscrepancyReport compare_solutions(const AuctionConfig& cfg, const NeSolution& a,
                                           const NeSolution& b, double rel_tolerance = 1e-6) {
  const std::vector<double> fa = a.strategies.flat();
  const std::vector<double> fb = b.strategies.flat();
  if (fa.size() != fb.size() || fa.size() != cfg.n_players()) {
    throw std::invalid_argument("compare_solutions: solutions do not match the configuration");
  }
  DiscrepancyReport r;
  r.source_a = a.source;
  r.source_b = b.source;
  r.tolerance = rel_tolerance;
  for (std::size_t k = 0; k < fa.size(); ++k) {
    const double abs_gap = std::abs(fa[k] - fb[k]);
    const double rel_gap = abs_gap / std::max({1.0, std::abs(fa[k]), std::abs(fb[k])});
    r.abs_gaps.push_back(abs_gap);
    r.rel_gaps.push_back(rel_gap);
    r.component_agrees.push_back(rel_gap <= rel_tolerance);
    r.agree = r.agree && r.component_agrees.back();
  }
  r.argmax_gaps_a = nash_gaps(cfg, a.strategies);
  r.argmax_gaps_b = nash_gaps(cfg, b.strategies);
  return r;
}

}  // namespace bwauction

#endif  // BWAUCTION_EQUILIBRIUM_HPP
