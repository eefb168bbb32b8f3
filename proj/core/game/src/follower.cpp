#include "mcs/follower.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcs/errors.hpp"

namespace mcs {

double price_threshold(const MuProfile& mu) {
  const double margin = mu.delta() - mu.cost();
  return mu.cost() + margin * (1.0 - mu.demand().cdf(mu.tau()));
}

BestResponse best_response(const MuProfile& mu, double p) {
  if (!(p >= 0.0)) throw DomainError("price must be nonnegative, got " + std::to_string(p));

  BestResponse out;
  if (p < price_threshold(mu)) {
    out.region = ResponseRegion::BelowThreshold;
    return out;
  }
  if (p > mu.delta()) {
    out.region = ResponseRegion::AboveDelta;
    out.x_star = mu.tau();
    return out;
  }

  const double margin = mu.delta() - mu.cost();
  const double level = std::clamp((mu.delta() - p) / margin, 0.0, 1.0);
  const double xi = mu.demand().quantile(level);
  const double f = mu.demand().density(xi);

  out.region = ResponseRegion::Interior;
  out.x_star = std::clamp(mu.tau() - xi, 0.0, mu.tau());
  out.dx_dp = 1.0 / (f * margin);
  // Chain rule through the quantile: f' / (f^3 (delta - c)^2).
  out.d2x_dp2 = mu.demand().density_slope(xi) / (f * f * f * margin * margin);
  return out;
}

double foc_residual(const MuProfile& mu, double x, double p) {
  const double margin = mu.delta() - mu.cost();
  return margin * (mu.demand().cdf(mu.tau() - x) - 1.0) + p - mu.cost();
}

AllocationProfile respond(const Scenario& scenario, const PriceProfile& p) {
  if (p.size() != scenario.size()) throw ShapeError("price vector length does not match scenario");
  AllocationProfile x;
  x.x.reserve(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) x.x.push_back(best_response(scenario.mu(n), p[n]).x_star);
  return x;
}

}  // namespace mcs
