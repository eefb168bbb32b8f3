#include "mcs/model.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mcs/errors.hpp"

namespace mcs {

MuProfile::MuProfile(double tau, double delta, double cost, DemandDistribution demand)
    : tau_(tau), delta_(delta), cost_(cost), demand_(std::move(demand)) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("MU capacity tau must be positive, got " + std::to_string(tau));
  }
  if (!(cost >= 0.0) || !std::isfinite(delta) || !(cost < delta)) {
    throw ConfigError("MU requires 0 <= cost < delta, got cost=" + std::to_string(cost) +
                      " delta=" + std::to_string(delta));
  }
}

Scenario::Scenario(double lambda, std::vector<MuProfile> mus, std::uint64_t seed)
    : lambda_(lambda), mus_(std::move(mus)), seed_(seed) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be positive, got " + std::to_string(lambda));
  }
  if (mus_.empty()) throw ConfigError("scenario needs at least one MU");
}

double aggregate_b(const AllocationProfile& x) {
  double b = 1.0;
  for (double xi : x.x) {
    if (!(xi >= 0.0)) throw DomainError("allocation must be nonnegative, got " + std::to_string(xi));
    b += std::log1p(xi);
  }
  return b;
}

double sp_utility(const AllocationProfile& x, double lambda) {
  return lambda * std::log(aggregate_b(x));
}

double sp_payoff(const AllocationProfile& x, const PriceProfile& p, double lambda) {
  if (x.size() != p.size()) {
    throw ShapeError("price/allocation length mismatch: " + std::to_string(p.size()) + " vs " +
                     std::to_string(x.size()));
  }
  double payment = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) payment += p[n] * x[n];
  return sp_utility(x, lambda) - payment;
}

double mu_own_profit(const MuProfile& mu, double remaining) {
  if (!(remaining >= 0.0 && remaining <= mu.tau())) {
    throw DomainError("remaining resources " + std::to_string(remaining) + " outside [0, " +
                      std::to_string(mu.tau()) + "]");
  }
  if (remaining == 0.0) return 0.0;
  return (mu.delta() - mu.cost()) * mu.demand().expected_min(remaining);
}

double mu_payoff(const MuProfile& mu, double x, double p) {
  if (!(x >= 0.0 && x <= mu.tau())) {
    throw DomainError("allocation " + std::to_string(x) + " outside [0, tau]");
  }
  if (x == 0.0) return 0.0;
  return mu_own_profit(mu, mu.tau() - x) - mu_own_profit(mu, mu.tau()) - mu.cost() * x + p * x;
}

void validate_allocation(const Scenario& scenario, const AllocationProfile& x) {
  if (x.size() != scenario.size()) throw ShapeError("allocation length does not match scenario");
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (!(x[n] >= 0.0 && x[n] <= scenario.mu(n).tau())) {
      throw DomainError("allocation " + std::to_string(n) + " outside [0, tau]");
    }
  }
}

}  // namespace mcs
