#include "mcs/cli/experiments.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "mcs/errors.hpp"
#include "mcs/follower.hpp"
#include "mcs/rng.hpp"

namespace mcs::cli {

namespace {

void accumulate(PolicyEvaluation& acc, const Transition& t) {
  acc.sp_payoff += t.sp_payoff;
  for (std::size_t n = 0; n < t.mu_payoffs.size(); ++n) acc.mu_payoffs[n] += t.mu_payoffs[n];
}

DemandDistribution with_upper(const DemandDistribution& d, double hi) {
  switch (d.kind()) {
    case DemandKind::Uniform: return DemandDistribution::uniform(d.lo(), hi);
    case DemandKind::TruncatedExponential: return DemandDistribution::truncated_exponential(d.lo(), hi, d.rate());
  }
  throw ConfigError("unsupported demand family");
}

MuProfile replace(const MuProfile& mu, const std::string& axis, double value) {
  if (axis == "delta") return MuProfile(mu.tau(), value, mu.cost(), mu.demand());
  if (axis == "cost") return MuProfile(mu.tau(), mu.delta(), value, mu.demand());
  if (axis == "demand_upper") {
    if (!(value > mu.demand().lo())) throw ConfigError("demand upper bound must exceed the lower bound");
    return MuProfile(mu.tau(), mu.delta(), mu.cost(), with_upper(mu.demand(), value));
  }
  throw ConfigError("unknown MU sweep axis '" + axis + "'");
}

SweepSummaryRow summarize(double value, const PointResult& r) {
  SweepSummaryRow row;
  row.value = value;
  row.sp_payoff = r.sp_payoff;
  row.converged = r.converged;
  const auto n = static_cast<double>(r.p.size());
  for (std::size_t i = 0; i < r.p.size(); ++i) {
    row.mean_p_star += r.p[i] / n;
    row.mean_x_star += r.x[i] / n;
    row.total_mu_payoff += r.mu_payoffs[i];
  }
  return row;
}

std::string skip_note(const std::string& axis, double value, const std::string& who, const std::exception& e) {
  std::ostringstream note;
  note << axis << "=" << value << " for " << who << ": " << e.what();
  return note.str();
}

}  // namespace

PolicyEvaluation evaluate_constant(const Scenario& scenario, const EnvConfig& env, const PriceProfile& prices) {
  // The followers ignore history, so every step scores the same.
  const GameState state = env_reset_with_prices(scenario, env, std::vector<PriceProfile>(env.history_length, prices));
  PolicyEvaluation acc{0.0, std::vector<double>(scenario.size(), 0.0)};
  accumulate(acc, env_step(scenario, env, state, prices));
  return acc;
}

PolicyEvaluation evaluate_random(const Scenario& scenario, const EnvConfig& env, std::size_t episodes,
                                 std::uint64_t seed) {
  RngStream rng(seed, kBaselineStream);
  GameState state = env_reset(scenario, env, rng);
  PolicyEvaluation acc{0.0, std::vector<double>(scenario.size(), 0.0)};
  const std::size_t steps = episodes * env.episode_length;
  for (std::size_t t = 0; t < steps; ++t) {
    Transition tr = env_step(scenario, env, state, random_policy(scenario.size(), env, rng));
    accumulate(acc, tr);
    state = std::move(tr.next_state);
  }
  const auto denom = static_cast<double>(steps);
  acc.sp_payoff /= denom;
  for (double& u : acc.mu_payoffs) u /= denom;
  return acc;
}

Scenario with_mu_parameter(const Scenario& scenario, std::size_t mu, const std::string& axis, double value) {
  std::vector<MuProfile> mus = scenario.mus();
  mus.at(mu) = replace(mus.at(mu), axis, value);
  return Scenario(scenario.lambda(), std::move(mus), scenario.seed());
}

Scenario with_parameter(const Scenario& scenario, const std::string& axis, double value) {
  if (axis == "lambda") return Scenario(value, scenario.mus(), scenario.seed());
  std::vector<MuProfile> mus;
  for (const MuProfile& mu : scenario.mus()) mus.push_back(replace(mu, axis, value));
  return Scenario(scenario.lambda(), std::move(mus), scenario.seed());
}

PointSolver static_point_solver(const SolverConfig& solver) {
  return [solver](const Scenario& s) {
    EquilibriumResult r = compute_se(s, solver);
    return PointResult{std::move(r.p_star), std::move(r.x_star), std::move(r.mu_payoffs), r.sp_payoff, r.converged};
  };
}

PriceProfile tail_mean_action(const std::vector<rl::EpisodeStats>& trace, std::size_t tail) {
  if (trace.empty()) throw StateError("empty training trace");
  const std::size_t n = std::min(tail, trace.size());
  PriceProfile p{std::vector<double>(trace.back().mean_action.size(), 0.0)};
  for (std::size_t e = trace.size() - n; e < trace.size(); ++e) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += trace[e].mean_action[i] / static_cast<double>(n);
  }
  return p;
}

PointSolver trained_point_solver(const EnvConfig& env, const rl::TrainConfig& train, std::size_t tail_episodes) {
  return [env, train, tail_episodes](const Scenario& s) {
    const rl::TrainResult trained = mcs::train(s, env, train);
    PointResult r;
    r.p = tail_mean_action(trained.trace, tail_episodes);
    r.x = respond(s, r.p);
    r.sp_payoff = sp_payoff(r.x, r.p, s.lambda());
    for (std::size_t n = 0; n < s.size(); ++n) r.mu_payoffs.push_back(mu_payoff(s.mu(n), r.x[n], r.p[n]));
    r.converged = true;
    return r;
  };
}

SweepResult run_sweep(const Scenario& base, const std::string& axis, const std::vector<double>& values,
                      const PointSolver& solve) {
  SweepResult out;
  out.axis = axis;
  for (double v : values) {
    if (axis == "lambda") {
      const PointResult r = solve(with_parameter(base, axis, v));
      out.all_converged = out.all_converged && r.converged;
      for (std::size_t n = 0; n < base.size(); ++n) {
        out.rows.push_back({v, n, r.p[n], r.x[n], r.mu_payoffs[n], r.sp_payoff, r.converged});
      }
      out.summary.push_back(summarize(v, r));
      continue;
    }

    for (std::size_t n = 0; n < base.size(); ++n) {
      std::optional<Scenario> s;
      try {
        s = with_mu_parameter(base, n, axis, v);
      } catch (const ConfigError& e) {
        out.skipped.push_back(skip_note(axis, v, "MU " + std::to_string(n + 1), e));
        continue;
      }
      const PointResult r = solve(*s);
      out.all_converged = out.all_converged && r.converged;
      out.rows.push_back({v, n, r.p[n], r.x[n], r.mu_payoffs[n], r.sp_payoff, r.converged});
    }
    std::optional<Scenario> all;
    try {
      all = with_parameter(base, axis, v);
    } catch (const ConfigError& e) {
      out.skipped.push_back(skip_note(axis, v, "all MUs", e));
      continue;
    }
    const PointResult r = solve(*all);
    out.all_converged = out.all_converged && r.converged;
    out.summary.push_back(summarize(v, r));
  }
  return out;
}

}  // namespace mcs::cli
