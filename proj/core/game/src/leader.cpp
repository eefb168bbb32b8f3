#include "mcs/leader.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mcs/errors.hpp"
#include "mcs/follower.hpp"
#include "mcs/rng.hpp"

namespace mcs {

namespace {

constexpr double kHessianMargin = 1e-6;

struct Evaluation {
  std::vector<BestResponse> responses;
  double value = 0.0;
  std::vector<double> grad;
  std::vector<double> curvature;  // |H_nn|, the Hessian diagonal magnitude
};

double hessian_diagonal(const BestResponse& r, double p, double g1, double g2) {
  const double q = r.dx_dp / (1.0 + r.x_star);
  return (g2 - g1) * q * q - 2.0 * r.dx_dp + (g1 / (1.0 + r.x_star) - p) * r.d2x_dp2;
}

void check_in_box(const PriceBox& box, const PriceProfile& p) {
  if (p.size() != box.lower.size()) throw ShapeError("price vector length does not match scenario");
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (!(p[n] >= box.lower[n] && p[n] <= box.upper[n])) {
      throw DomainError("price " + std::to_string(n) + " = " + std::to_string(p[n]) +
                        " outside pricing box [" + std::to_string(box.lower[n]) + ", " +
                        std::to_string(box.upper[n]) + "]");
    }
  }
}

Evaluation evaluate(const Scenario& scenario, const PriceProfile& p) {
  const std::size_t n_mus = scenario.size();
  Evaluation e;
  e.responses.reserve(n_mus);
  AllocationProfile x;
  x.x.reserve(n_mus);
  for (std::size_t n = 0; n < n_mus; ++n) {
    e.responses.push_back(best_response(scenario.mu(n), p[n]));
    x.x.push_back(e.responses.back().x_star);
  }
  const double b = aggregate_b(x);
  const double g1 = scenario.lambda() / b;
  const double g2 = -scenario.lambda() / (b * b);
  e.value = sp_payoff(x, p, scenario.lambda());
  e.grad.resize(n_mus);
  e.curvature.resize(n_mus);
  for (std::size_t n = 0; n < n_mus; ++n) {
    const BestResponse& r = e.responses[n];
    e.grad[n] = (g1 / (1.0 + r.x_star) - p[n]) * r.dx_dp - r.x_star;
    e.curvature[n] = std::abs(hessian_diagonal(r, p[n], g1, g2));
  }
  return e;
}

PriceProfile project(const PriceBox& box, const PriceProfile& p) {
  PriceProfile out = p;
  for (std::size_t n = 0; n < p.size(); ++n) out[n] = std::clamp(p[n], box.lower[n], box.upper[n]);
  return out;
}

double projected_residual(const PriceBox& box, const PriceProfile& p, const std::vector<double>& g) {
  double res = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double moved = std::clamp(p[n] + g[n], box.lower[n], box.upper[n]);
    res = std::max(res, std::abs(moved - p[n]));
  }
  return res;
}

double dot_step(const std::vector<double>& g, const PriceProfile& to, const PriceProfile& from) {
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) s += g[n] * (to[n] - from[n]);
  return s;
}

struct StartOutcome {
  PriceProfile p;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

StartOutcome ascend(const Scenario& scenario, const PriceBox& box, PriceProfile p,
                    const SolverConfig& config) {
  StartOutcome out;
  Evaluation current = evaluate(scenario, p);
  out.trace.push_back(current.value);

  for (int iter = 0; iter < config.max_iters; ++iter) {
    out.residual = projected_residual(box, p, current.grad);
    if (out.residual <= config.tol) {
      out.converged = true;
      break;
    }

    // Near the optimum, objective changes fall below double rounding noise;
    // there the sign of the directional derivative at the trial point decides
    // (for a concave objective it certifies no decrease along the segment).
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(current.value));
    // Search direction: the gradient, optionally divided by the Hessian
    // diagonal magnitude so that badly scaled coordinates move together.
    std::vector<double> direction = current.grad;
    if (config.diagonal_scaling) {
      for (std::size_t n = 0; n < p.size(); ++n) {
        if (current.curvature[n] > 0.0 && std::isfinite(current.curvature[n])) {
          direction[n] /= current.curvature[n];
        }
      }
    }

    double step = config.initial_step;
    bool accepted = false;
    for (int k = 0; k < config.max_backtracks; ++k, step *= config.shrink) {
      PriceProfile trial = p;
      for (std::size_t n = 0; n < p.size(); ++n) trial[n] = p[n] + step * direction[n];
      trial = project(box, trial);
      if (trial == p) break;

      Evaluation next = evaluate(scenario, trial);
      const double slope = dot_step(current.grad, trial, p);
      const bool armijo = next.value >= current.value + config.armijo * slope;
      const bool flat = std::abs(next.value - current.value) <= noise &&
                        dot_step(next.grad, trial, p) >= 0.0;
      if (armijo || flat) {
        p = std::move(trial);
        current = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.residual = projected_residual(box, p, current.grad);
      out.converged = out.residual <= config.tol;
      break;
    }
    ++out.iterations;
    out.trace.push_back(current.value);
  }
  if (!out.converged) out.residual = projected_residual(box, p, current.grad);
  out.converged = out.residual <= config.tol;
  out.p = std::move(p);
  out.value = current.value;
  return out;
}

}  // namespace

void validate(const SolverConfig& config) {
  if (!(config.tol > 0.0)) throw ConfigError("solver.tol must be positive");
  if (config.max_iters < 1) throw ConfigError("solver.max_iters must be >= 1");
  if (config.n_starts < 1) throw ConfigError("solver.n_starts must be >= 1");
  if (!(config.initial_step > 0.0)) throw ConfigError("solver.initial_step must be positive");
  if (!(config.shrink > 0.0 && config.shrink < 1.0)) throw ConfigError("solver.shrink must lie in (0, 1)");
  if (!(config.armijo > 0.0 && config.armijo < 1.0)) throw ConfigError("solver.armijo must lie in (0, 1)");
  if (config.max_backtracks < 1) throw ConfigError("solver.max_backtracks must be >= 1");
}

PriceBox price_box(const Scenario& scenario) {
  PriceBox box;
  for (const MuProfile& mu : scenario.mus()) {
    box.lower.push_back(price_threshold(mu));
    box.upper.push_back(mu.delta());
  }
  return box;
}

double induced_sp_payoff(const Scenario& scenario, const PriceProfile& p) {
  return sp_payoff(respond(scenario, p), p, scenario.lambda());
}

std::vector<double> sp_payoff_gradient(const Scenario& scenario, const PriceProfile& p) {
  check_in_box(price_box(scenario), p);
  return evaluate(scenario, p).grad;
}

Eigen::MatrixXd sp_payoff_hessian(const Scenario& scenario, const PriceProfile& p) {
  const PriceBox box = price_box(scenario);
  check_in_box(box, p);
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n] - box.lower[n] < kHessianMargin || box.upper[n] - p[n] < kHessianMargin) {
      throw DomainError("Hessian requires prices strictly inside the pricing box");
    }
  }

  const Evaluation e = evaluate(scenario, p);
  const std::size_t n_mus = p.size();
  AllocationProfile x;
  for (const BestResponse& r : e.responses) x.x.push_back(r.x_star);
  const double b = aggregate_b(x);
  const double g1 = scenario.lambda() / b;
  const double g2 = -scenario.lambda() / (b * b);

  Eigen::VectorXd q(static_cast<Eigen::Index>(n_mus));
  for (std::size_t n = 0; n < n_mus; ++n) {
    q[static_cast<Eigen::Index>(n)] = e.responses[n].dx_dp / (1.0 + e.responses[n].x_star);
  }

  // g'' (q_i q_j) keeps the matrix bitwise symmetric.
  const auto dim = static_cast<Eigen::Index>(n_mus);
  Eigen::MatrixXd h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = g2 * (q[i] * q[j]);
  }
  for (std::size_t n = 0; n < n_mus; ++n) {
    const BestResponse& r = e.responses[n];
    const auto i = static_cast<Eigen::Index>(n);
    h(i, i) = hessian_diagonal(r, p[n], g1, g2);
  }
  return h;
}

EquilibriumResult solve_optimal_prices(const Scenario& scenario, const SolverConfig& config) {
  validate(config);
  for (const MuProfile& mu : scenario.mus()) {
    if (!mu.demand().admissible()) {
      throw ConfigError("equilibrium solving requires non-increasing, positive demand densities");
    }
  }
  const PriceBox box = price_box(scenario);

  std::vector<StartOutcome> starts;
  starts.reserve(static_cast<std::size_t>(config.n_starts));
  for (int s = 0; s < config.n_starts; ++s) {
    RngStream rng(scenario.seed(), kSolverStreamBase + static_cast<std::uint64_t>(s));
    PriceProfile init;
    for (std::size_t n = 0; n < scenario.size(); ++n) {
      init.p.push_back(rng.uniform(box.lower[n], box.upper[n]));
    }
    starts.push_back(ascend(scenario, box, std::move(init), config));
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < starts.size(); ++s) {
    if (starts[s].value > starts[best].value) best = s;
  }

  double spread = 0.0;
  bool all_converged = true;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    all_converged = all_converged && starts[i].converged;
    for (std::size_t j = i + 1; j < starts.size(); ++j) {
      for (std::size_t n = 0; n < scenario.size(); ++n) {
        spread = std::max(spread, std::abs(starts[i].p[n] - starts[j].p[n]));
      }
    }
  }

  EquilibriumResult result;
  StartOutcome& chosen = starts[best];
  result.p_star = chosen.p;
  result.sp_payoff = chosen.value;
  result.iterations = chosen.iterations;
  result.grad_residual = chosen.residual;
  result.multistart_spread = spread;
  result.converged = all_converged;
  result.best_start = best;
  result.objective_trace = std::move(chosen.trace);
  return result;
}

EquilibriumResult compute_se(const Scenario& scenario, const SolverConfig& config) {
  EquilibriumResult result = solve_optimal_prices(scenario, config);
  result.x_star = respond(scenario, result.p_star);
  result.sp_payoff = sp_payoff(result.x_star, result.p_star, scenario.lambda());
  result.mu_payoffs.clear();
  for (std::size_t n = 0; n < scenario.size(); ++n) {
    result.mu_payoffs.push_back(mu_payoff(scenario.mu(n), result.x_star[n], result.p_star[n]));
  }
  return result;
}

}  // namespace mcs
