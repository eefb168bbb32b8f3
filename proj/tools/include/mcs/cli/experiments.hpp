#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mcs/dynamics.hpp"
#include "mcs/leader.hpp"
#include "mcs/rl/trainer.hpp"

namespace mcs::cli {

/// Stream used for the random-pricing baseline within a seed.
inline constexpr std::uint64_t kBaselineStream = 5;

struct PolicyEvaluation {
  double sp_payoff = 0.0;            // mean per step
  std::vector<double> mu_payoffs;    // mean per step, per MU
};

/// A fixed price profile posted every step.
PolicyEvaluation evaluate_constant(const Scenario& scenario, const EnvConfig& env, const PriceProfile& prices);

/// Independent uniform prices on [0, p_max] for `episodes` x D steps.
PolicyEvaluation evaluate_random(const Scenario& scenario, const EnvConfig& env, std::size_t episodes,
                                 std::uint64_t seed);

/// Copy of `scenario` with one MU's `axis` parameter (delta, cost or
/// demand_upper) set to `value`. Throws ConfigError if the result is invalid.
Scenario with_mu_parameter(const Scenario& scenario, std::size_t mu, const std::string& axis, double value);

/// Copy with every MU's parameter (or lambda) set to `value`.
Scenario with_parameter(const Scenario& scenario, const std::string& axis, double value);

struct SweepRow {
  double value = 0.0;
  std::size_t mu = 0;       // 0-based
  double p_star = 0.0;
  double x_star = 0.0;
  double mu_payoff = 0.0;
  double sp_payoff = 0.0;
  bool converged = false;
};

struct SweepSummaryRow {
  double value = 0.0;
  double sp_payoff = 0.0;
  double mean_p_star = 0.0;
  double mean_x_star = 0.0;
  double total_mu_payoff = 0.0;
  bool converged = false;
};

struct SweepResult {
  std::string axis;
  std::vector<SweepRow> rows;            // ceteris paribus: one MU varied at a time
  std::vector<SweepSummaryRow> summary;  // every MU (or lambda) set to the value
  std::vector<std::string> skipped;      // infeasible (value, MU) settings
  bool all_converged = true;
};

/// Prices and responses reported for one sweep point.
struct PointResult {
  PriceProfile p;
  AllocationProfile x;
  std::vector<double> mu_payoffs;
  double sp_payoff = 0.0;
  bool converged = false;
};

using PointSolver = std::function<PointResult(const Scenario&)>;

/// The static equilibrium.
PointSolver static_point_solver(const SolverConfig& solver);

/// Trains a policy on the scenario and posts the mean of its actions over
/// the last `tail_episodes` episodes; `converged` is always true.
PointSolver trained_point_solver(const EnvConfig& env, const rl::TrainConfig& train, std::size_t tail_episodes);

/// Mean posted action over the last `tail` episodes of a trace.
PriceProfile tail_mean_action(const std::vector<rl::EpisodeStats>& trace, std::size_t tail);

/// For axis lambda the per-MU rows come from the single scenario at that
/// lambda; for MU axes, row (value, n) solves the base scenario with only
/// MU n's parameter replaced.
SweepResult run_sweep(const Scenario& base, const std::string& axis, const std::vector<double>& values,
                      const PointSolver& solve);

}  // namespace mcs::cli
