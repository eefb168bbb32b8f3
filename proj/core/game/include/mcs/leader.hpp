#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mcs/model.hpp"

namespace mcs {

/// Projected gradient ascent settings for the leader's pricing problem.
struct SolverConfig {
  double tol = 1e-8;            // projected-gradient infinity norm
  int max_iters = 20000;        // per start
  int n_starts = 5;
  double initial_step = 1.0;
  double shrink = 0.5;
  double armijo = 1e-4;         // sufficient-increase slope factor
  int max_backtracks = 200;
  bool diagonal_scaling = true; // divide the ascent direction by |H_nn|
};

void validate(const SolverConfig& config);

struct EquilibriumResult {
  PriceProfile p_star;
  AllocationProfile x_star;
  double sp_payoff = 0.0;
  std::vector<double> mu_payoffs;
  int iterations = 0;              // accepted steps of the reported start
  double grad_residual = 0.0;      // ||P(p + grad) - p||_inf at p_star
  double multistart_spread = 0.0;  // max pairwise ||p_i - p_j||_inf over starts
  bool converged = false;          // every start reached tol
  std::size_t best_start = 0;
  std::vector<double> objective_trace;  // accepted objective values, best start
};

/// Per-MU pricing box [price_threshold, delta].
struct PriceBox {
  std::vector<double> lower;
  std::vector<double> upper;
};

PriceBox price_box(const Scenario& scenario);

/// Leader payoff when followers best-respond to p.
double induced_sp_payoff(const Scenario& scenario, const PriceProfile& p);

/// Analytic gradient of induced_sp_payoff on the pricing box.
/// Throws DomainError when p lies outside the box.
std::vector<double> sp_payoff_gradient(const Scenario& scenario, const PriceProfile& p);

/// Analytic Hessian at a point at least 1e-6 inside every face of the box.
Eigen::MatrixXd sp_payoff_hessian(const Scenario& scenario, const PriceProfile& p);

/// Stage I: maximize induced_sp_payoff over the pricing box from
/// `config.n_starts` seeded random starts. Non-convergence is reported via
/// `converged = false` together with the best iterate found.
EquilibriumResult solve_optimal_prices(const Scenario& scenario, const SolverConfig& config = {});

/// Stage I followed by the followers' stage-II responses and all payoffs.
EquilibriumResult compute_se(const Scenario& scenario, const SolverConfig& config = {});

/// Start i draws its initial prices from RNG stream kSolverStreamBase + i
/// of the scenario seed.
inline constexpr std::uint64_t kSolverStreamBase = 1000;

}  // namespace mcs
