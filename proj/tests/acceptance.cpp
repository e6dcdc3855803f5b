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

// Acceptance run: one PASS/FAIL line per criterion, artifacts in argv[1].

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "bwauction/bwauction.hpp"
#include "cli/commands.hpp"
#include "cli/io.hpp"

using namespace bwauction;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;  // <= 0: no limit
  std::function<Verdict()> check;
};

std::string out_dir;

std::string num(double x) { return cli::format_number(x); }

const AuctionConfig& reference() {
  static const AuctionConfig cfg = build_config(reference_scenario());
  return cfg;
}

const NeSolution& reference_oracle() {
  static const NeSolution sol = oracle_fixed_point(reference(), default_initial_strategies(reference()));
  return sol;
}

std::pair<Trajectory, bool> reference_learning(double tau, std::size_t steps, double tol = 1e-3) {
  const AuctionConfig& cfg = reference();
  return run_capturing_divergence([&] {
    return run_learning(cfg, LearningParams::uniform(cfg.n_sps(), tau, steps, tol),
                        default_initial_strategies(cfg));
  });
}

double distance_to_ne(const StrategyVector& s) {
  const double d = max_abs_diff(s, reference_oracle().strategies);
  return std::isfinite(d) ? d : std::numeric_limits<double>::infinity();
}

Verdict property_suite(const std::string& name, std::size_t cases) {
  const PropertyResult r = run_property(name, 1, cases);
  Verdict v{r.failed == 0, std::to_string(r.passed) + "/" + std::to_string(cases) + " cases pass"};
  if (r.first_failure) v.detail += "; first failure seed " + std::to_string(r.first_failure->case_seed);
  return v;
}

Verdict ac3() {
  Rng rng(2024);
  std::size_t solved = 0, singular = 0, bad = 0;
  for (int k = 0; k < 500; ++k) {
    const NeSystem sys = build_system(random_config(rng));
    try {
      const NeSolution s = solve_closed_form(sys);
      ++solved;
      if (!(s.residual <= 1e-9 * (1.0 + sys.vector_b.cwiseAbs().maxCoeff()))) ++bad;
    } catch (const NoEquilibrium&) {
      ++singular;
    }
  }
  const NeSolution closed = solve_closed_form(reference());
  const DiscrepancyReport rep = compare_solutions(reference(), closed, reference_oracle());
  cli::KeyValueReport r;
  r.comment("reference scenario: closed form (a) versus best-response oracle (b)");
  cli::add_strategy(r, "closed_form", closed.strategies);
  cli::add_strategy(r, "oracle", reference_oracle().strategies);
  cli::add_discrepancy(r, rep);
  const std::string path = out_dir + "/reference_discrepancy.txt";
  r.write(path);
  std::ostringstream os;
  os << solved << " solved, " << singular << " singular, " << bad
     << " over the residual bound; reference residual " << num(closed.residual)
     << "; report " << path << " (agree=" << (rep.agree ? "true" : "false") << ")";
  return {bad == 0 && solved > 0 && fs::exists(path), os.str()};
}

Verdict ac4() {
  const auto [traj, diverged] = reference_learning(0.6, 10);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_step = 0;
  for (const auto& rec : traj.records) {
    const double d = distance_to_ne(rec.strategies);
    if (d < best) {
      best = d;
      best_step = rec.step;
    }
  }
  std::ostringstream os;
  os << "closest approach " << num(best) << " at step " << best_step << " (need <= 0.01 by step 10)"
     << "; terminal distance " << num(distance_to_ne(traj.records.back().strategies))
     << (diverged ? "; run diverged" : "");
  return {best <= 1e-2, os.str()};
}

double terminal_distance(double tau) {
  const auto [traj, diverged] = reference_learning(tau, 20, std::numeric_limits<double>::min());
  return diverged ? std::numeric_limits<double>::infinity()
                  : distance_to_ne(traj.records.back().strategies);
}

Verdict ac5() {
  const double d1 = terminal_distance(0.1), d4 = terminal_distance(0.4), d6 = terminal_distance(0.6);
  std::ostringstream os;
  os << "d(0.1)=" << num(d1) << " d(0.4)=" << num(d4) << " d(0.6)=" << num(d6);
  return {d1 >= d4 && d4 >= d6 - 1e-6, os.str()};
}

Verdict ac6() {
  const AuctionConfig& cfg = reference();
  const StrategyVector s0 = default_initial_strategies(cfg);
  const LearningParams params = LearningParams::uniform(cfg.n_sps(), 0.6, 100, 1e-3);
  const auto [learn, learn_div] =
      run_capturing_divergence([&] { return run_learning(cfg, params, s0); });
  std::ostringstream os;
  os << "learning: "
     << (learn.convergence_step ? "converged at step " + std::to_string(*learn.convergence_step)
                                : std::string(learn_div ? "diverged at step " : "not converged by step ") +
                                      std::to_string(learn.records.back().step));
  bool ordered = false;
  for (double eta : {0.01, 0.05, 0.1}) {
    const auto [base, base_div] = run_capturing_divergence(
        [&] { return run_gradient_baseline(cfg, params, GradientParams{eta, 1e-2}, s0); });
    os << "; baseline eta=" << num(eta) << ": "
       << (base.convergence_step ? "step " + std::to_string(*base.convergence_step)
                                 : std::string(base_div ? "diverged" : "not converged"));
    if (learn.convergence_step) {
      const std::size_t b = base.convergence_step ? *base.convergence_step : params.max_steps + 1;
      ordered = ordered || b >= *learn.convergence_step;
    }
  }
  if (!learn.convergence_step) os << "; ordering undefined without a learning convergence step";
  return {ordered, os.str()};
}

Verdict ac7() {
  const double th = radio::theta(1e-4);
  const double t_nos = radio::throughput_nos(th, radio::db_to_linear(20.0));
  const double t_os = radio::throughput_os(th, radio::db_to_linear(30.0));
  const double t_cm = radio::throughput_cm_exact(th, radio::db_to_linear(10.0),
                                                 radio::db_to_linear(10.0), 1.0, 1.0);
  struct Item {
    const char* name;
    double got, want, tol;
  };
  const Item items[] = {{"theta", th, 0.197343, 1e-6},
                        {"T(20dB)", t_nos, 4.3738, 1e-3},
                        {"T(30dB)", t_os, 7.6324, 1e-3},
                        {"CM(10dB)", t_cm, 0.78608, 1e-3}};
  bool ok = true;
  std::ostringstream os;
  for (const Item& it : items) {
    const bool pass = std::abs(it.got - it.want) <= it.tol;
    ok = ok && pass;
    os << it.name << "=" << num(it.got) << (pass ? " ok" : " OFF by " + num(std::abs(it.got - it.want)))
       << "; ";
  }
  return {ok, os.str()};
}

Verdict ac8() {
  std::string files[2];
  for (int k = 0; k < 2; ++k) {
    cli::RunManifest m;
    m.command = cli::Command::learn;
    m.scenario_path = std::string(BWAUCTION_SCENARIO_DIR) + "/reference.yaml";
    m.output_dir = out_dir + "/determinism_" + std::to_string(k);
    m.seed = 42;
    std::ostringstream log;
    cli::run_command(m, log);
    files[k] = cli::read_text(m.output_dir + "/trajectory.csv");
  }
  const bool same = !files[0].empty() && files[0] == files[1];
  return {same, std::to_string(files[0].size()) + " bytes, " + (same ? "identical" : "different")};
}

Verdict ac9() {
  const AuctionConfig& cfg = reference();
  const FixedPointReport rep = fixed_point_report(
      cfg, reference_oracle().strategies, LearningParams::uniform(cfg.n_sps(), 0.6, 20), 1e-3);
  cli::KeyValueReport r;
  r.comment("learning seeded at the oracle equilibrium with exact K and C");
  cli::add_strategy(r, "equilibrium", rep.equilibrium);
  r.set("estimates.k", rep.estimates.k);
  r.set("estimates.c", rep.estimates.c);
  r.set_list("targets", rep.targets);
  r.set_list("target_offsets", rep.target_offsets);
  r.set("run.steps", rep.steps_run);
  r.set("run.diverged", rep.run_diverged);
  r.set("run.max_deviation", rep.max_run_deviation);
  r.set("run.worst_component", Player::from_flat(rep.worst_component, cfg.n_sps()).label());
  r.set("tolerance", rep.tolerance);
  r.set("within_tolerance", rep.within_tolerance);
  const std::string path = out_dir + "/fixed_point_report.txt";
  r.write(path);
  std::ostringstream os;
  os << (rep.within_tolerance ? "stays within 1e-3" : "drifts")
     << ": max deviation " << num(rep.max_run_deviation) << " on "
     << Player::from_flat(rep.worst_component, cfg.n_sps()).label() << " over " << rep.steps_run
     << " steps" << (rep.run_diverged ? " (diverged)" : "") << "; report " << path;
  // Either outcome counts once it is written down.
  return {rep.within_tolerance || fs::exists(path), os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  out_dir = argc > 1 ? argv[1] : "acceptance_artifacts";
  fs::create_directories(out_dir);

  const Criterion criteria[] = {
      {"AC1", "market balance", 1.0, [] { return property_suite("market_balance", 1000); }},
      {"AC2", "oracle Nash property", 60.0, [] { return property_suite("oracle_nash", 100); }},
      {"AC3", "closed-form self-consistency", 0.0, ac3},
      {"AC4", "learner reaches NE at tau=0.6", 1.0, ac4},
      {"AC5", "learning-rate robustness ordering", 1.0, ac5},
      {"AC6", "baseline ordering", 1.0, ac6},
      {"AC7", "radio spot values", 1.0, ac7},
      {"AC8", "determinism", 0.0, ac8},
      {"AC9", "fixed-point invariance", 0.0, ac9},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      v.pass = false;
      v.detail += "; over the " + num(c.time_limit_s) + " s budget";
    }
    failed += v.pass ? 0 : 1;
    std::printf("[%s] %s %s (%.3f s): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                v.detail.c_str());
  }
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
