#pragma once

#include "mcs/model.hpp"

namespace mcs {

enum class ResponseRegion { BelowThreshold, Interior, AboveDelta };

/// A follower's optimal allocation at a given price, with its first and
/// second price derivatives (both zero outside the interior region).
struct BestResponse {
  double x_star = 0.0;
  ResponseRegion region = ResponseRegion::BelowThreshold;
  double dx_dp = 0.0;
  double d2x_dp2 = 0.0;
};

/// Lowest price that induces participation: c + (delta - c)(1 - F(tau)).
double price_threshold(const MuProfile& mu);

/// Closed-form stage-II response. The interior branch covers the closed
/// interval [price_threshold, delta]. Throws DomainError for p < 0.
BestResponse best_response(const MuProfile& mu, double p);

/// dU_n/dx_n = (delta - c)(F(tau - x) - 1) + p - c.
double foc_residual(const MuProfile& mu, double x, double p);

/// Componentwise best response; the price vector must match the scenario.
AllocationProfile respond(const Scenario& scenario, const PriceProfile& p);

}  // namespace mcs
