#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mcs/distribution.hpp"

namespace mcs {

/// Private parameters of one mobile user (follower).
class MuProfile {
 public:
  /// Throws ConfigError unless tau > 0 and 0 <= cost < delta.
  MuProfile(double tau, double delta, double cost, DemandDistribution demand);

  double tau() const { return tau_; }
  double delta() const { return delta_; }
  double cost() const { return cost_; }
  const DemandDistribution& demand() const { return demand_; }

 private:
  double tau_;
  double delta_;
  double cost_;
  DemandDistribution demand_;
};

/// A full game instance. MU order is the canonical index.
class Scenario {
 public:
  Scenario(double lambda, std::vector<MuProfile> mus, std::uint64_t seed);

  double lambda() const { return lambda_; }
  const std::vector<MuProfile>& mus() const { return mus_; }
  const MuProfile& mu(std::size_t n) const { return mus_.at(n); }
  std::size_t size() const { return mus_.size(); }
  std::uint64_t seed() const { return seed_; }

 private:
  double lambda_;
  std::vector<MuProfile> mus_;
  std::uint64_t seed_;
};

/// Leader action: one price per MU.
struct PriceProfile {
  std::vector<double> p;

  std::size_t size() const { return p.size(); }
  double operator[](std::size_t n) const { return p[n]; }
  double& operator[](std::size_t n) { return p[n]; }
  friend bool operator==(const PriceProfile&, const PriceProfile&) = default;
};

/// Follower response: resources contributed by each MU.
struct AllocationProfile {
  std::vector<double> x;

  std::size_t size() const { return x.size(); }
  double operator[](std::size_t n) const { return x[n]; }
  double& operator[](std::size_t n) { return x[n]; }
  friend bool operator==(const AllocationProfile&, const AllocationProfile&) = default;
};

/// 1 + sum_i ln(1 + x_i).
double aggregate_b(const AllocationProfile& x);

/// lambda * ln(aggregate_b(x)).
double sp_utility(const AllocationProfile& x, double lambda);

/// Leader payoff: utility minus payments p^T x.
double sp_payoff(const AllocationProfile& x, const PriceProfile& p, double lambda);

/// Expected profit from serving own demand with `remaining` units:
/// (delta - c) E[min(xi, remaining)].
double mu_own_profit(const MuProfile& mu, double remaining);

/// Follower payoff increment from contributing x units at price p; 0 at x = 0.
double mu_payoff(const MuProfile& mu, double x, double p);

/// Throws ShapeError/DomainError unless x fits the scenario (0 <= x_n <= tau_n).
void validate_allocation(const Scenario& scenario, const AllocationProfile& x);

}  // namespace mcs
