#include "mcs/cli/commands.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcs/cli/experiments.hpp"
#include "mcs/cli/gradcheck.hpp"
#include "mcs/cli/report.hpp"
#include "mcs/cli/scenario_gen.hpp"
#include "mcs/cli/svg.hpp"
#include "mcs/csv.hpp"
#include "mcs/dynamics.hpp"
#include "mcs/errors.hpp"
#include "mcs/follower.hpp"
#include "mcs/leader.hpp"
#include "mcs/rl/checkpoint.hpp"
#include "mcs/rl/trainer.hpp"

namespace mcs::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) { return format_double(v); }

Scenario scenario_for(const RunConfig& config) {
  return generate_scenario(config.scenario, config.scenario.seed.value_or(config.seed));
}

void numbered_columns(std::ostream& out, const std::string& prefix, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) out << ',' << prefix << i;
}

std::vector<double> sequence(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  return v;
}

std::string checkpoint_text(const rl::PolicyParams& policy, const RunConfig& config) {
  std::ostringstream out;
  const rl::ConfigEcho echo{{"seed", std::to_string(config.seed)},
                            {"episodes", std::to_string(config.train.episodes)},
                            {"steps_per_episode", std::to_string(config.train.steps_per_episode)},
                            {"actor_lr", fmt(config.train.actor_lr)},
                            {"critic_lr", fmt(config.train.critic_lr)}};
  rl::save_checkpoint(out, policy, echo);
  return out.str();
}

std::string equilibrium_csv(const Scenario& s, const EquilibriumResult& r) {
  std::ostringstream out;
  out << "mu,tau,delta,cost,demand_kind,demand_lo,demand_hi,price_threshold,p_star,x_star,mu_payoff,price_bound\n";
  const double b = aggregate_b(r.x_star);
  for (std::size_t n = 0; n < s.size(); ++n) {
    const MuProfile& mu = s.mu(n);
    out << (n + 1) << ',' << fmt(mu.tau()) << ',' << fmt(mu.delta()) << ',' << fmt(mu.cost()) << ','
        << to_string(mu.demand().kind()) << ',' << fmt(mu.demand().lo()) << ',' << fmt(mu.demand().hi()) << ','
        << fmt(price_threshold(mu)) << ',' << fmt(r.p_star[n]) << ',' << fmt(r.x_star[n]) << ','
        << fmt(r.mu_payoffs[n]) << ',' << fmt(s.lambda() / (b * (1.0 + r.x_star[n]))) << '\n';
  }
  return out.str();
}

}  // namespace

int cmd_static(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  const std::string started = utc_timestamp();
  const Scenario scenario = scenario_for(config);
  const EquilibriumResult r = compute_se(scenario, config.solver);

  OutputSink sink(out_dir);
  sink.write("equilibrium.csv", equilibrium_csv(scenario, r));
  std::ostringstream summary;
  summary << "sp_payoff,aggregate_b,iterations,grad_residual,multistart_spread,converged,best_start\n"
          << fmt(r.sp_payoff) << ',' << fmt(aggregate_b(r.x_star)) << ',' << r.iterations << ','
          << fmt(r.grad_residual) << ',' << fmt(r.multistart_spread) << ',' << (r.converged ? 1 : 0) << ','
          << r.best_start << '\n';
  sink.write("summary.csv", summary.str());
  if (config.output.svg) {
    sink.write("objective_trace.svg",
               line_chart({"Leader objective, best start", "accepted step", "SP payoff"},
                          {{"objective", sequence(r.objective_trace.size()), r.objective_trace, false}}));
  }
  sink.write_manifest("static", config.seed, to_json(config), started);

  log << "static: SP payoff " << fmt(r.sp_payoff) << ", residual " << fmt(r.grad_residual) << ", spread "
      << fmt(r.multistart_spread) << '\n';
  if (!r.converged) {
    log << "static: solver did not reach tol " << fmt(config.solver.tol) << " from every start\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_train(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  const std::string started = utc_timestamp();
  const Scenario scenario = scenario_for(config);
  const std::size_t n_mus = scenario.size();
  const EquilibriumResult se = compute_se(scenario, config.solver);

  OutputSink sink(out_dir);

  std::ostringstream episodes;
  episodes << "episode,mean_reward,mean_sp_payoff,surrogate,critic_loss_first,critic_loss_last";
  numbered_columns(episodes, "p_", n_mus);
  numbered_columns(episodes, "x_", n_mus);
  numbered_columns(episodes, "mu_payoff_", n_mus);
  numbered_columns(episodes, "std_", n_mus);
  episodes << '\n';

  std::ostringstream steps;
  if (config.output.steps_trace) write_step_csv_header(steps, n_mus);
  std::size_t step_count = 0;
  const std::size_t d = config.train.steps_per_episode;
  std::vector<double> episode_mu_payoff(n_mus, 0.0);
  std::vector<double> episode_x(n_mus, 0.0);

  auto observer = [&](const Transition& t) {
    if (config.output.steps_trace) {
      write_step_csv_row(steps, static_cast<int>(step_count / d), step_count % d, t);
    }
    for (std::size_t n = 0; n < n_mus; ++n) {
      episode_mu_payoff[n] += t.mu_payoffs[n] / static_cast<double>(d);
      episode_x[n] += t.response[n] / static_cast<double>(d);
    }
    ++step_count;
  };

  std::vector<std::vector<double>> x_series(n_mus);
  std::vector<std::vector<double>> mu_series(n_mus);
  auto on_episode = [&](const rl::EpisodeStats& e) {
    episodes << e.episode << ',' << fmt(e.mean_reward) << ',' << fmt(e.mean_payoff) << ',' << fmt(e.surrogate)
             << ',' << fmt(e.critic_loss_first) << ',' << fmt(e.critic_loss_last);
    for (double p : e.mean_action) episodes << ',' << fmt(p);
    for (double x : episode_x) episodes << ',' << fmt(x);
    for (double u : episode_mu_payoff) episodes << ',' << fmt(u);
    for (double s : e.policy_std) episodes << ',' << fmt(s);
    episodes << '\n';
    for (std::size_t n = 0; n < n_mus; ++n) {
      x_series[n].push_back(episode_x[n]);
      mu_series[n].push_back(episode_mu_payoff[n]);
    }
    std::fill(episode_x.begin(), episode_x.end(), 0.0);
    std::fill(episode_mu_payoff.begin(), episode_mu_payoff.end(), 0.0);
  };

  rl::TrainResult trained;
  try {
    trained = mcs::train(scenario, config.env, config.train, observer, on_episode);
  } catch (const rl::TrainingAborted& e) {
    sink.write("episodes.csv", episodes.str());
    if (config.output.steps_trace) sink.write("steps.csv", steps.str());
    const auto snapshot = sink.write("abort_snapshot.ckpt", checkpoint_text(e.snapshot(), config));
    sink.write_manifest("train", config.seed, to_json(config), started);
    log << "train: aborted at episode " << e.episode() << ": " << e.what() << "\n"
        << "train: last finite policy written to " << snapshot.string() << '\n';
    return kExitNumeric;
  }

  sink.write("episodes.csv", episodes.str());
  if (config.output.steps_trace) sink.write("steps.csv", steps.str());
  sink.write("policy.ckpt", checkpoint_text(trained.policy, config));

  // Tail of the trained run against the baselines and the static reference.
  const std::size_t tail = std::min(config.baselines.tail_episodes, trained.trace.size());
  double tail_payoff = 0.0;
  std::vector<double> tail_mu(n_mus, 0.0);
  for (std::size_t e = trained.trace.size() - tail; e < trained.trace.size(); ++e) {
    tail_payoff += trained.trace[e].mean_payoff / static_cast<double>(tail);
    for (std::size_t n = 0; n < n_mus; ++n) tail_mu[n] += mu_series[n][e] / static_cast<double>(tail);
  }
  const PolicyEvaluation greedy = evaluate_constant(scenario, config.env, greedy_policy(n_mus, config.env));
  const PolicyEvaluation random = evaluate_random(scenario, config.env, config.baselines.random_episodes, config.seed);

  std::ostringstream baselines;
  baselines << "policy,mean_sp_payoff";
  numbered_columns(baselines, "mu_payoff_", n_mus);
  baselines << '\n';
  auto row = [&](const char* name, double sp, const std::vector<double>& mu) {
    baselines << name << ',' << fmt(sp);
    for (double u : mu) baselines << ',' << fmt(u);
    baselines << '\n';
  };
  row("drl_tail", tail_payoff, tail_mu);
  row("greedy", greedy.sp_payoff, greedy.mu_payoffs);
  row("random", random.sp_payoff, random.mu_payoffs);
  row("static_se", se.sp_payoff, se.mu_payoffs);
  sink.write("baselines.csv", baselines.str());

  if (config.output.svg) {
    const std::vector<double> ep = sequence(trained.trace.size());
    std::vector<Series> prices;
    std::vector<Series> allocations;
    std::vector<Series> mu_payoffs;
    for (std::size_t n = 0; n < n_mus; ++n) {
      const std::string id = std::to_string(n + 1);
      std::vector<double> p;
      for (const rl::EpisodeStats& e : trained.trace) p.push_back(e.mean_action[n]);
      prices.push_back({"p_" + id, ep, p, false});
      prices.push_back({"p*_" + id, {ep.front(), ep.back()}, {se.p_star[n], se.p_star[n]}, true});
      allocations.push_back({"x_" + id, ep, x_series[n], false});
      allocations.push_back({"x*_" + id, {ep.front(), ep.back()}, {se.x_star[n], se.x_star[n]}, true});
      mu_payoffs.push_back({"U_" + id, ep, mu_series[n], false});
    }
    std::vector<double> sp;
    for (const rl::EpisodeStats& e : trained.trace) sp.push_back(e.mean_payoff);
    const double first = ep.front();
    const double last = ep.back();
    sink.write("prices.svg", line_chart({"Posted prices", "episode", "price"}, prices));
    sink.write("allocations.svg", line_chart({"Follower allocations", "episode", "resources"}, allocations));
    sink.write("sp_payoff.svg",
               line_chart({"SP payoff", "episode", "mean payoff per step"},
                          {{"DRL", ep, sp, false},
                           {"static SE", {first, last}, {se.sp_payoff, se.sp_payoff}, true},
                           {"greedy", {first, last}, {greedy.sp_payoff, greedy.sp_payoff}, true},
                           {"random", {first, last}, {random.sp_payoff, random.sp_payoff}, true}}));
    sink.write("mu_payoffs.svg", line_chart({"MU payoffs", "episode", "mean payoff per step"}, mu_payoffs));
  }
  sink.write_manifest("train", config.seed, to_json(config), started);

  log << "train: tail SP payoff " << fmt(tail_payoff) << " (static SE " << fmt(se.sp_payoff) << ", greedy "
      << fmt(greedy.sp_payoff) << ", random " << fmt(random.sp_payoff) << ")\n";
  if (!se.converged) {
    log << "train: static reference solver did not converge\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  const std::string started = utc_timestamp();
  if (config.sweep.axis.empty()) throw ConfigError("sweep.axis: required for the sweep command");
  if (config.sweep.values.empty()) throw ConfigError("sweep.values: need at least one value");
  const Scenario base = scenario_for(config);
  const PointSolver solve = config.sweep.method == "trained"
                                ? trained_point_solver(config.env, config.train, config.baselines.tail_episodes)
                                : static_point_solver(config.solver);
  const SweepResult r = run_sweep(base, config.sweep.axis, config.sweep.values, solve);

  OutputSink sink(out_dir);
  std::ostringstream rows;
  rows << "axis,value,mu,p_star,x_star,mu_payoff,sp_payoff,converged\n";
  for (const SweepRow& row : r.rows) {
    rows << r.axis << ',' << fmt(row.value) << ',' << (row.mu + 1) << ',' << fmt(row.p_star) << ','
         << fmt(row.x_star) << ',' << fmt(row.mu_payoff) << ',' << fmt(row.sp_payoff) << ','
         << (row.converged ? 1 : 0) << '\n';
  }
  sink.write("sweep.csv", rows.str());

  std::ostringstream summary;
  summary << "axis,value,sp_payoff,mean_p_star,mean_x_star,total_mu_payoff,converged\n";
  for (const SweepSummaryRow& row : r.summary) {
    summary << r.axis << ',' << fmt(row.value) << ',' << fmt(row.sp_payoff) << ',' << fmt(row.mean_p_star) << ','
            << fmt(row.mean_x_star) << ',' << fmt(row.total_mu_payoff) << ',' << (row.converged ? 1 : 0) << '\n';
  }
  sink.write("sweep_summary.csv", summary.str());

  std::ostringstream skipped;
  skipped << "note\n";
  for (const std::string& s : r.skipped) skipped << '"' << s << "\"\n";
  sink.write("sweep_skipped.csv", skipped.str());

  if (config.output.svg) {
    std::vector<Series> p_series;
    std::vector<Series> x_series;
    for (std::size_t n = 0; n < base.size(); ++n) {
      Series p{"MU " + std::to_string(n + 1), {}, {}, false};
      Series x = p;
      for (const SweepRow& row : r.rows) {
        if (row.mu != n) continue;
        p.x.push_back(row.value);
        p.y.push_back(row.p_star);
        x.x.push_back(row.value);
        x.y.push_back(row.x_star);
      }
      p_series.push_back(std::move(p));
      x_series.push_back(std::move(x));
    }
    sink.write("sweep_p_star.svg", line_chart({"Equilibrium price, one MU varied", r.axis, "p*"}, p_series));
    sink.write("sweep_x_star.svg", line_chart({"Equilibrium allocation, one MU varied", r.axis, "x*"}, x_series));
    std::vector<std::string> categories;
    Series sp{"SP payoff", {}, {}, false};
    for (const SweepSummaryRow& row : r.summary) {
      categories.push_back(r.axis + "=" + fmt(row.value));
      sp.y.push_back(row.sp_payoff);
    }
    sink.write("sweep_sp_payoff.svg", bar_chart({"SP payoff, all MUs set", r.axis, "SP payoff"}, categories, {sp}));
  }
  sink.write_manifest("sweep", config.seed, to_json(config), started);

  for (const std::string& s : r.skipped) log << "sweep: skipped " << s << '\n';
  log << "sweep: " << r.rows.size() << " rows, " << r.summary.size() << " summary rows\n";
  if (!r.all_converged) {
    log << "sweep: some points did not converge\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_gradcheck(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  const std::string started = utc_timestamp();
  const std::vector<CheckResult> results = run_gradcheck(config.seed, config.gradcheck.probes, config.gradcheck.corrupt);

  std::ostringstream csv;
  csv << "check,probes,comparisons,max_rel_err,tolerance,passed\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-22s %7s %12s %14s %10s  %s\n", "check", "probes", "comparisons", "max_rel_err",
                "tolerance", "result");
  log << line;
  bool all = true;
  for (const CheckResult& r : results) {
    csv << r.name << ',' << r.probes << ',' << r.comparisons << ',' << fmt(r.max_rel_err) << ','
        << fmt(r.tolerance) << ',' << (r.passed ? 1 : 0) << '\n';
    std::snprintf(line, sizeof(line), "%-22s %7zu %12zu %14.3e %10.1e  %s\n", r.name.c_str(), r.probes,
                  r.comparisons, r.max_rel_err, r.tolerance, r.passed ? "PASS" : "FAIL");
    log << line;
    all = all && r.passed;
  }

  OutputSink sink(out_dir);
  sink.write("gradcheck.csv", csv.str());
  sink.write_manifest("gradcheck", config.seed, to_json(config), started);

  if (!all) {
    log << "gradcheck: failing checks:";
    for (const CheckResult& r : results) {
      if (!r.passed) log << ' ' << r.name;
    }
    log << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace mcs::cli
