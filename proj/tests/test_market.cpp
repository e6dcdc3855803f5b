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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "bwauction/market.hpp"
#include "bwauction/properties.hpp"

namespace bwauction {
namespace {

AuctionConfig one_sp(double ld = 1.0, double ls = 1.0, double c = 2.0, double rt = 5.0) {
  return AuctionConfig{ld, {ls}, {c}, {1.0}, {rt}};
}

TEST(ClearingPrice, WorkedExample) {
  EXPECT_DOUBLE_EQ(clearing_price(one_sp(), StrategyVector{{2.0}, 10.0}), 6.0);
}

TEST(ClearingPrice, EqualInterceptsGiveThatPrice) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const AuctionConfig cfg = random_config(rng);
    const double q = rng.uniform(-50.0, 50.0);
    StrategyVector s{std::vector<double>(cfg.n_sps(), q), q};
    EXPECT_NEAR(clearing_price(cfg, s), q, 1e-12 * (1.0 + std::abs(q)));
    const Allocation a = allocations(cfg, s, clearing_price(cfg, s));
    EXPECT_NEAR(a.demand_bw, 0.0, 1e-10);
    for (double b : a.supply_bws) EXPECT_NEAR(b, 0.0, 1e-10);
  }
}

TEST(ClearingPrice, StiffDemandLimitIsSupplyWeightedMean) {
  AuctionConfig cfg{1e12, {1.0, 3.0}, {0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}};
  const double p = clearing_price(cfg, StrategyVector{{2.0, 6.0}, 1e3});
  EXPECT_NEAR(p, (2.0 / 1.0 + 6.0 / 3.0) / (1.0 + 1.0 / 3.0), 1e-6);
}

TEST(ClearingPrice, MonotoneInEveryIntercept) {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const AuctionConfig cfg = random_config(rng);
    StrategyVector s = random_strategy(rng, cfg.n_sps(), 100.0);
    const double p0 = clearing_price(cfg, s);
    const Player who = Player::from_flat(rng.uniform_int(0, cfg.n_sps()), cfg.n_sps());
    s[who] += 1.0;
    EXPECT_GT(clearing_price(cfg, s), p0);
  }
}

TEST(ClearingPrice, TranslationCovariant) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const AuctionConfig cfg = random_config(rng);
    StrategyVector s = random_strategy(rng, cfg.n_sps(), 100.0);
    const double p0 = clearing_price(cfg, s);
    const double shift = rng.uniform(-20.0, 20.0);
    for (double& x : s.supply_intercepts) x += shift;
    s.demand_intercept += shift;
    EXPECT_NEAR(clearing_price(cfg, s), p0 + shift, 1e-10 * (1.0 + std::abs(p0)));
  }
}

TEST(ClearingPrice, InvariantUnderProviderPermutation) {
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    AuctionConfig cfg = random_config(rng);
    StrategyVector s = random_strategy(rng, cfg.n_sps(), 100.0);
    const double p0 = clearing_price(cfg, s);
    std::vector<std::size_t> perm(cfg.n_sps());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    AuctionConfig c2 = cfg;
    StrategyVector s2 = s;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      c2.supply_slopes[i] = cfg.supply_slopes[perm[i]];
      s2.supply_intercepts[i] = s.supply_intercepts[perm[i]];
    }
    EXPECT_NEAR(clearing_price(c2, s2), p0, 1e-11 * (1.0 + std::abs(p0)));
  }
}

TEST(Allocations, SignFlag) {
  const AuctionConfig cfg{1.0, {1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}};
  const MarketOutcome out = play_round(cfg, StrategyVector{{0.0, 9.0}, 6.0});
  EXPECT_DOUBLE_EQ(out.price, 5.0);
  EXPECT_FALSE(out.negative_supply_flags[0]);
  EXPECT_TRUE(out.negative_supply_flags[1]);
  EXPECT_LT(out.supply_bws[1], 0.0);
}

TEST(Payoffs, WorkedExample) {
  const AuctionConfig cfg = one_sp();
  const MarketOutcome out = play_round(cfg, StrategyVector{{2.0}, 10.0});
  EXPECT_DOUBLE_EQ(out.price, 6.0);
  EXPECT_DOUBLE_EQ(out.demand_bw, 4.0);
  EXPECT_DOUBLE_EQ(out.supply_bws[0], 4.0);
  EXPECT_DOUBLE_EQ(out.demand_payoff, -4.0);
  EXPECT_DOUBLE_EQ(out.supply_payoffs[0], 16.0);
}

TEST(Payoffs, DegenerateCases) {
  const AuctionConfig cfg{1.0, {1.0, 2.0}, {3.0, 3.0}, {1.0, 1.0}, {4.0, 4.0}};
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_EQ(demand_payoff(cfg, 3.0, 0.0, zero), 0.0);
  const std::vector<double> bws{1.5, 2.5};
  EXPECT_DOUBLE_EQ(demand_payoff(cfg, 4.0, 4.0, bws), 0.0);
  EXPECT_EQ(supply_payoff(cfg, 0, 6.0, 0.0), 0.0);
  EXPECT_EQ(supply_payoff(cfg, 1, 3.0, 7.0), 0.0);
  EXPECT_THROW(supply_payoff(cfg, 2, 3.0, 7.0), std::out_of_range);
}

TEST(Payoffs, NoTradeGivesZeroPayoffs) {
  const AuctionConfig cfg{0.7, {1.0, 2.0, 0.3}, {3.0, 1.0, 0.0}, {1.0, 2.0, 1.0}, {4.0, 1.0, 9.0}};
  const MarketOutcome out = play_round(cfg, StrategyVector{{4.2, 4.2, 4.2}, 4.2});
  EXPECT_NEAR(out.demand_payoff, 0.0, 1e-12);
  for (double v : out.supply_payoffs) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Payoffs, PlayerPayoffMatchesPlayRoundBitwise) {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const AuctionConfig cfg = random_config(rng);
    const StrategyVector s = random_strategy(rng, cfg.n_sps(), 100.0);
    const MarketOutcome out = play_round(cfg, s);
    for (std::size_t j = 0; j < cfg.n_players(); ++j) {
      const Player who = Player::from_flat(j, cfg.n_sps());
      EXPECT_EQ(player_payoff(cfg, s, who), out.payoff(who));
    }
  }
}

TEST(MarketBalance, HoldsOnRandomInputs) {
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const AuctionConfig cfg = random_config(rng);
    const StrategyVector s = random_strategy(rng, cfg.n_sps(), 100.0);
    const MarketOutcome out = play_round(cfg, s);
    const double supply = std::accumulate(out.supply_bws.begin(), out.supply_bws.end(), 0.0);
    EXPECT_LE(std::abs(out.demand_bw - supply), 1e-9 * std::max(1.0, std::abs(out.demand_bw)));
  }
}

TEST(Config, Validation) {
  AuctionConfig cfg = one_sp();
  EXPECT_NO_THROW(cfg.validate());
  cfg.unit_costs.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = one_sp(0.0);
  try {
    cfg.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.fields(), std::vector<std::string>{"demand_slope"});
  }
  cfg = AuctionConfig{1.0, {}, {}, {}, {}};
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Strategy, FlatRoundTripAndLabels) {
  const StrategyVector s{{1.0, 2.0, 3.0}, 4.0};
  EXPECT_EQ(StrategyVector::from_flat(s.flat()), s);
  EXPECT_EQ(Player::from_flat(3, 3), Player::demand());
  EXPECT_EQ(Player::supplier(1).label(), "S2");
  EXPECT_EQ(Player::demand().label(), "D");
  EXPECT_DOUBLE_EQ(s[Player::demand()], 4.0);
  EXPECT_DOUBLE_EQ(max_abs_diff(s, StrategyVector{{1.0, 2.5, 3.0}, 3.0}), 1.0);
}

}  // namespace
}  // namespace bwauction
