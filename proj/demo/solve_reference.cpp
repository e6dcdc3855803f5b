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

// Solves the bundled reference market and runs a short learning session.

#include <cstdio>

#include "bwauction/bwauction.hpp"

using namespace bwauction;

namespace {

void print_profile(const char* label, const StrategyVector& s) {
  std::printf("%-12s", label);
  for (double x : s.flat()) std::printf(" %12.6f", x);
  std::printf("\n");
}

}  // namespace

int main() {
  const AuctionConfig cfg = build_config(reference_scenario());
  std::printf("throughputs:");
  for (double t : cfg.throughputs) std::printf(" %.6f", t);
  std::printf("\n\n%-12s %12s %12s %12s %12s\n", "", "S1", "S2", "S3", "D");

  const NeSolution oracle = oracle_fixed_point(cfg, default_initial_strategies(cfg));
  print_profile("oracle", oracle.strategies);
  try {
    print_profile("closed form", solve_closed_form(cfg).strategies);
  } catch (const NoEquilibrium& e) {
    std::printf("closed form: %s\n", e.what());
  }

  const MarketOutcome out = play_round(cfg, oracle.strategies);
  std::printf("\nprice %.6f, demand %.6f, buyer payoff %.6f\n", out.price, out.demand_bw,
              out.demand_payoff);

  std::printf("\nlearning, tau = 0.6\n");
  auto [traj, diverged] = run_capturing_divergence([&] {
    return run_learning(cfg, LearningParams::uniform(cfg.n_sps(), 0.6, 10),
                        default_initial_strategies(cfg));
  });
  for (const auto& r : traj.records) {
    char label[16];
    std::snprintf(label, sizeof label, "t=%zu", r.step);
    print_profile(label, r.strategies);
  }
  if (diverged) std::printf("diverged\n");
  return 0;
}
