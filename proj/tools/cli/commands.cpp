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

#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

#include "bwauction/bwauction.hpp"
#include "cli/config.hpp"
#include "cli/io.hpp"

namespace bwauction::cli {
namespace {

namespace fs = std::filesystem;

const char* command_name(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::learn: return "learn";
    case Command::sweep: return "sweep";
    case Command::validate: return "validate";
    case Command::compare: return "compare";
  }
  return "unknown";
}

const char* mutation_name(Mutation m) {
  return m == Mutation::clearing_price_offset ? "clearing_price_offset" : "none";
}

Mutation parse_mutation(const std::string& s) {
  if (s == "none") return Mutation::none;
  if (s == "clearing_price_offset") return Mutation::clearing_price_offset;
  throw ConfigError("unknown mutation " + s, {"mutation"});
}

std::string out_path(const RunManifest& m, const std::string& name) {
  return (fs::path(m.output_dir) / name).string();
}

/// The scenario with --set overrides and --seed applied.
RunConfig load(const RunManifest& m) {
  if (m.scenario_path.empty()) throw ConfigError("--scenario is required", {"--scenario"});
  std::vector<std::string> overrides = m.overrides;
  RunConfig rc = load_run_config(m.scenario_path, overrides);
  if (m.seed && rc.scenario.geometric) rc.scenario.geometric->rng_seed = *m.seed;
  return rc;
}

void add_config(KeyValueReport& r, const AuctionConfig& cfg) {
  r.set("config.unit_label", cfg.unit_label);
  r.set("config.n_sps", cfg.n_sps());
  r.set("config.demand_slope", cfg.demand_slope);
  r.set_list("config.supply_slopes", cfg.supply_slopes);
  r.set_list("config.unit_costs", cfg.unit_costs);
  r.set_list("config.revenues", cfg.revenues);
  r.set_list("config.throughputs", cfg.throughputs);
}

struct OracleResult {
  std::optional<NeSolution> solution;
  std::string status = "ok";
};

OracleResult try_oracle(const AuctionConfig& cfg) {
  OracleResult r;
  try {
    r.solution = oracle_fixed_point(cfg, default_initial_strategies(cfg));
  } catch (const Error& e) {
    r.status = e.what();
  }
  return r;
}

struct RunSummary {
  Trajectory trajectory;
  bool diverged = false;
  double terminal_distance = std::numeric_limits<double>::quiet_NaN();
};

RunSummary summarize(std::pair<Trajectory, bool> run, const OracleResult& oracle) {
  RunSummary s{std::move(run.first), run.second};
  if (oracle.solution) {
    s.terminal_distance = max_abs_diff(s.trajectory.records.back().strategies,
                                       oracle.solution->strategies);
    if (!std::isfinite(s.terminal_distance)) s.terminal_distance = std::numeric_limits<double>::infinity();
  }
  return s;
}

void add_run(KeyValueReport& r, const std::string& prefix, const RunSummary& s) {
  r.set(prefix + ".converged", s.trajectory.converged);
  r.set(prefix + ".convergence_step", s.trajectory.convergence_step
                                          ? std::to_string(*s.trajectory.convergence_step)
                                          : std::string("none"));
  r.set(prefix + ".diverged", s.diverged);
  r.set(prefix + ".steps", s.trajectory.records.back().step);
  r.set(prefix + ".terminal_distance", s.terminal_distance);
}

// -- solve ------------------------------------------------------------------

ExitCode cmd_solve(const RunManifest& m, std::ostream& log) {
  const RunConfig rc = load(m);
  const AuctionConfig cfg = build_config(rc.scenario);

  KeyValueReport sol;
  sol.comment("complete-information equilibrium, closed form and best-response oracle");
  add_config(sol, cfg);

  std::optional<NeSolution> closed;
  std::string closed_status = "ok";
  try {
    closed = solve_closed_form(cfg);
  } catch (const NoEquilibrium& e) {
    closed_status = e.what();
  }
  const OracleResult oracle = try_oracle(cfg);

  sol.set("closed_form.status", closed_status);
  if (closed) {
    add_strategy(sol, "closed_form", closed->strategies);
    sol.set("closed_form.residual", closed->residual);
    sol.set_list("closed_form.argmax_gaps", closed->argmax_gaps);
  }
  sol.set("oracle.status", oracle.status);
  if (oracle.solution) {
    add_strategy(sol, "oracle", oracle.solution->strategies);
    sol.set("oracle.max_argmax_gap", oracle.solution->residual);
    sol.set("oracle.iterations", oracle.solution->iterations);
    sol.set("oracle.relaxation", oracle.solution->relaxation);
  }
  sol.write(out_path(m, "solution.txt"));

  if (closed && oracle.solution) {
    KeyValueReport rep;
    rep.comment("closed form (a) versus best-response oracle (b)");
    add_discrepancy(rep, compare_solutions(cfg, *closed, *oracle.solution));
    rep.write(out_path(m, "discrepancy.txt"));
  }
  log << "solve: closed_form=" << closed_status << " oracle=" << oracle.status << "\n";
  if (!closed) throw NoEquilibrium(closed_status);
  if (!oracle.solution) throw NonConvergence(oracle.status, {});
  return ExitCode::ok;
}

// -- learn ------------------------------------------------------------------

void write_learning_summary(const RunManifest& m, const std::string& name, const RunSummary& s,
                            const OracleResult& oracle, double tau) {
  KeyValueReport r;
  r.comment("best-response learning summary");
  r.set("tau", tau);
  add_run(r, "learning", s);
  r.set("oracle.status", oracle.status);
  if (oracle.solution) add_strategy(r, "oracle", oracle.solution->strategies);
  for (const auto& rec : s.trajectory.records)
    r.set_list("snapshot." + std::to_string(rec.step), rec.strategies.flat());
  r.write(out_path(m, name));
}

ExitCode cmd_learn(const RunManifest& m, std::ostream& log) {
  const RunConfig rc = load(m);
  const AuctionConfig cfg = build_config(rc.scenario);
  const LearningParams params = rc.learning.resolve(cfg.n_sps());
  const OracleResult oracle = try_oracle(cfg);
  const RunSummary s = summarize(run_capturing_divergence([&] {
                                   return run_learning(cfg, params, default_initial_strategies(cfg));
                                 }),
                                 oracle);
  write_trajectory_csv(out_path(m, "trajectory.csv"), s.trajectory, cfg.n_sps());
  write_learning_summary(m, "summary.txt", s, oracle, params.rate_demand);
  log << "learn: converged=" << (s.trajectory.converged ? "true" : "false")
      << " steps=" << s.trajectory.records.back().step << "\n";
  if (s.diverged) {
    throw Diverged("best-response learning diverged at step " +
                       std::to_string(s.trajectory.records.back().step),
                   s.trajectory);
  }
  return ExitCode::ok;
}

// -- sweep ------------------------------------------------------------------

ExitCode cmd_sweep(const RunManifest& m, std::ostream& log) {
  const RunConfig rc = load(m);
  std::vector<double> requested = m.taus.empty() ? rc.sweep_taus : m.taus;
  if (requested.empty()) throw ConfigError("sweep needs at least one tau", {"--tau"});
  for (double tau : requested) {
    if (!(tau > 0.0 && tau <= 1.0)) {
      throw ConfigError("every tau must lie in (0, 1], got " + format_number(tau), {"--tau"});
    }
  }
  std::vector<double> taus;
  for (double tau : requested) {
    if (std::find(taus.begin(), taus.end(), tau) != taus.end()) {
      log << "warning: duplicate tau " << format_number(tau) << " ignored\n";
      continue;
    }
    taus.push_back(tau);
  }

  const AuctionConfig cfg = build_config(rc.scenario);
  const OracleResult oracle = try_oracle(cfg);
  std::string table = "tau,converged,convergence_step,diverged,steps,terminal_distance\n";
  for (double tau : taus) {
    LearningSection section = rc.learning;
    section.rate_demand = tau;
    section.rate_supply.clear();
    section.rate_supply_scalar = tau;
    const LearningParams params = section.resolve(cfg.n_sps());
    const RunSummary s = summarize(run_capturing_divergence([&] {
                                     return run_learning(cfg, params, default_initial_strategies(cfg));
                                   }),
                                   oracle);
    const std::string tag = "tau_" + format_number(tau);
    write_trajectory_csv(out_path(m, "trajectory_" + tag + ".csv"), s.trajectory, cfg.n_sps());
    write_learning_summary(m, "summary_" + tag + ".txt", s, oracle, tau);
    table += format_number(tau) + "," + (s.trajectory.converged ? "1" : "0") + "," +
             (s.trajectory.convergence_step ? std::to_string(*s.trajectory.convergence_step)
                                            : std::string("nan")) +
             "," + (s.diverged ? "1" : "0") + "," +
             std::to_string(s.trajectory.records.back().step) + "," +
             format_number(s.terminal_distance) + "\n";
  }
  write_text(out_path(m, "sweep.csv"), table);
  log << "sweep: " << taus.size() << " runs\n";
  return ExitCode::ok;
}

// -- compare ----------------------------------------------------------------

ExitCode cmd_compare(const RunManifest& m, std::ostream& log) {
  const RunConfig rc = load(m);
  const AuctionConfig cfg = build_config(rc.scenario);
  const LearningParams params = rc.learning.resolve(cfg.n_sps());
  const StrategyVector s0 = default_initial_strategies(cfg);
  const OracleResult oracle = try_oracle(cfg);

  KeyValueReport r;
  r.comment("best-response learning versus myopic gradient baseline");
  const RunSummary learning =
      summarize(run_capturing_divergence([&] { return run_learning(cfg, params, s0); }), oracle);
  write_trajectory_csv(out_path(m, "trajectory_learning.csv"), learning.trajectory, cfg.n_sps());
  add_run(r, "learning", learning);

  bool any_slower = false;
  for (std::size_t k = 0; k < rc.baseline.step_sizes.size(); ++k) {
    const GradientParams gp{rc.baseline.step_sizes[k], rc.baseline.probe};
    const RunSummary base = summarize(
        run_capturing_divergence([&] { return run_gradient_baseline(cfg, params, gp, s0); }),
        oracle);
    const std::string tag = "baseline_" + std::to_string(k + 1);
    write_trajectory_csv(out_path(m, "trajectory_" + tag + ".csv"), base.trajectory, cfg.n_sps());
    r.set(tag + ".step_size", gp.step_size);
    add_run(r, tag, base);
    // Ordering is only defined when best-response learning converged.
    if (learning.trajectory.convergence_step) {
      const std::size_t base_steps = base.trajectory.convergence_step
                                         ? *base.trajectory.convergence_step
                                         : params.max_steps + 1;
      any_slower = any_slower || base_steps >= *learning.trajectory.convergence_step;
    }
  }
  r.set("ordering.defined", learning.trajectory.convergence_step.has_value());
  r.set("ordering.baseline_not_faster", any_slower);
  r.write(out_path(m, "compare.txt"));
  log << "compare: learning converged=" << (learning.trajectory.converged ? "true" : "false") << "\n";
  return ExitCode::ok;
}

// -- validate ---------------------------------------------------------------

void write_failure(const std::string& path, const FailingCase& f) {
  KeyValueReport r;
  r.comment("failing property case; replay with: validate --replay <this file>");
  r.set("property", f.property);
  r.set("base_seed", std::to_string(f.base_seed));
  r.set("index", f.index);
  r.set("case_seed", std::to_string(f.case_seed));
  r.set("mutation", std::string(mutation_name(f.mutation)));
  r.set("detail", f.detail);
  r.write(path);
}

ExitCode cmd_validate(const RunManifest& m, std::ostream& log) {
  if (m.replay) {
    const auto kv = read_key_values(*m.replay);
    auto field = [&](const std::string& k) {
      const auto it = kv.find(k);
      if (it == kv.end()) throw ConfigError("replay file lacks " + k, {k});
      return it->second;
    };
    const std::string property = field("property");
    const std::uint64_t case_seed = std::stoull(field("case_seed"));
    const Mutation mutation = parse_mutation(field("mutation"));
    const CaseOutcome out = run_case(property, case_seed, mutation);
    KeyValueReport r;
    r.set("property", property);
    r.set("case_seed", std::to_string(case_seed));
    r.set("mutation", std::string(mutation_name(mutation)));
    r.set("passed", out.passed);
    r.set("detail", out.detail.empty() ? std::string("none") : out.detail);
    r.write(out_path(m, "replay.txt"));
    log << "replay " << property << ": " << (out.passed ? "pass" : "fail") << "\n";
    return out.passed ? ExitCode::ok : ExitCode::property_failure;
  }

  const std::uint64_t seed = m.seed.value_or(1);
  const auto results = run_all_properties(seed, m.suite_sizes, m.mutation);
  KeyValueReport r;
  r.comment("randomized property suites");
  r.set("seed", std::to_string(seed));
  r.set("mutation", std::string(mutation_name(m.mutation)));
  bool all_ok = true;
  for (const auto& res : results) {
    r.set("property." + res.name + ".passed", res.passed);
    r.set("property." + res.name + ".failed", res.failed);
    log << res.name << ": " << res.passed << " passed, " << res.failed << " failed\n";
    if (res.first_failure) {
      all_ok = false;
      const std::string file = "failure_" + res.name + ".txt";
      write_failure(out_path(m, file), *res.first_failure);
      r.set("property." + res.name + ".failure_file", file);
    }
  }
  r.set("all_passed", all_ok);
  r.write(out_path(m, "validate.txt"));
  return all_ok ? ExitCode::ok : ExitCode::property_failure;
}

void write_error(const RunManifest& m, ExitCode code, const std::string& kind,
                 const std::string& message, const std::vector<std::string>& fields = {}) {
  KeyValueReport r;
  r.set("status", std::string("error"));
  r.set("command", std::string(command_name(m.command)));
  r.set("error", kind);
  r.set("exit_code", std::to_string(static_cast<int>(code)));
  r.set("message", message);
  std::string joined;
  for (const auto& f : fields) joined += (joined.empty() ? "" : ",") + f;
  if (!joined.empty()) r.set("fields", joined);
  try {
    r.write(out_path(m, "error.txt"));
  } catch (const IoError&) {
    // Output directory unusable; stderr still carries the message.
  }
}

}  // namespace

const char* exit_code_name(ExitCode code) {
  switch (code) {
    case ExitCode::ok: return "ok";
    case ExitCode::usage: return "usage";
    case ExitCode::config: return "ConfigError";
    case ExitCode::no_equilibrium: return "NoEquilibrium";
    case ExitCode::non_convergence: return "NonConvergence";
    case ExitCode::diverged: return "Diverged";
    case ExitCode::property_failure: return "PropertyFailure";
    case ExitCode::geometry: return "GeometryError";
    case ExitCode::domain: return "DomainError";
    case ExitCode::no_best_response: return "NoBestResponse";
    case ExitCode::io: return "IoError";
    case ExitCode::internal: return "InternalError";
  }
  return "unknown";
}

ExitCode run_command(const RunManifest& m, std::ostream& log) {
  auto fail = [&](ExitCode code, const std::string& message,
                  const std::vector<std::string>& fields = {}) {
    write_error(m, code, exit_code_name(code), message, fields);
    log << "error (" << exit_code_name(code) << "): " << message << "\n";
    return code;
  };
  try {
    std::error_code ec;
    fs::create_directories(m.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + m.output_dir);
    switch (m.command) {
      case Command::solve: return cmd_solve(m, log);
      case Command::learn: return cmd_learn(m, log);
      case Command::sweep: return cmd_sweep(m, log);
      case Command::validate: return cmd_validate(m, log);
      case Command::compare: return cmd_compare(m, log);
    }
    return ExitCode::usage;
  } catch (const ConfigError& e) {
    return fail(ExitCode::config, e.what(), e.fields());
  } catch (const NoEquilibrium& e) {
    return fail(ExitCode::no_equilibrium, e.what());
  } catch (const NonConvergence& e) {
    return fail(ExitCode::non_convergence, e.what());
  } catch (const Diverged& e) {
    return fail(ExitCode::diverged, e.what());
  } catch (const GeometryError& e) {
    return fail(ExitCode::geometry, e.what());
  } catch (const DomainError& e) {
    return fail(ExitCode::domain, e.what());
  } catch (const NoBestResponse& e) {
    return fail(ExitCode::no_best_response, e.what());
  } catch (const IoError& e) {
    return fail(ExitCode::io, e.what());
  } catch (const std::exception& e) {
    return fail(ExitCode::internal, e.what());
  }
}

}  // namespace bwauction::cli
