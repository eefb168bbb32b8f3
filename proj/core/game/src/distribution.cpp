#include "mcs/distribution.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "mcs/errors.hpp"

namespace mcs {

namespace {
// Gauss-Kronrod terminates on relative error; 1e-12 relative keeps the
// absolute error under 1e-10 for any integral of magnitude <= 100.
constexpr double kQuadratureTolerance = 1e-12;
}

std::string_view to_string(DemandKind kind) {
  switch (kind) {
    case DemandKind::Uniform:
      return "uniform";
    case DemandKind::TruncatedExponential:
      return "truncated_exponential";
  }
  return "unknown";
}

DemandDistribution::DemandDistribution(DemandKind kind, double lo, double hi, double rate)
    : kind_(kind), lo_(lo), hi_(hi), rate_(rate) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(lo < hi)) {
    throw ConfigError("demand support must satisfy 0 <= lo < hi, got [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  if (kind == DemandKind::TruncatedExponential && !(rate > 0.0 && std::isfinite(rate))) {
    throw ConfigError("truncated exponential rate must be positive");
  }
}

DemandDistribution DemandDistribution::uniform(double lo, double hi) {
  return DemandDistribution(DemandKind::Uniform, lo, hi, 0.0);
}

DemandDistribution DemandDistribution::truncated_exponential(double lo, double hi, double rate) {
  return DemandDistribution(DemandKind::TruncatedExponential, lo, hi, rate);
}

double DemandDistribution::normalizer() const { return -std::expm1(-rate_ * (hi_ - lo_)); }

double DemandDistribution::density(double xi) const {
  if (xi < lo_ || xi > hi_) return 0.0;
  switch (kind_) {
    case DemandKind::Uniform:
      return 1.0 / (hi_ - lo_);
    case DemandKind::TruncatedExponential:
      return rate_ * std::exp(-rate_ * (xi - lo_)) / normalizer();
  }
  return 0.0;
}

double DemandDistribution::density_slope(double xi) const {
  if (xi < lo_ || xi > hi_) return 0.0;
  switch (kind_) {
    case DemandKind::Uniform:
      return 0.0;
    case DemandKind::TruncatedExponential:
      return -rate_ * density(xi);
  }
  return 0.0;
}

double DemandDistribution::cdf(double xi) const {
  if (xi <= lo_) return 0.0;
  if (xi >= hi_) return 1.0;
  switch (kind_) {
    case DemandKind::Uniform:
      return (xi - lo_) / (hi_ - lo_);
    case DemandKind::TruncatedExponential:
      return -std::expm1(-rate_ * (xi - lo_)) / normalizer();
  }
  return 0.0;
}

double DemandDistribution::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("quantile level must lie in [0, 1], got " + std::to_string(q));
  }
  if (q == 0.0) return lo_;
  if (q == 1.0) return hi_;
  double xi = lo_;
  switch (kind_) {
    case DemandKind::Uniform:
      xi = lo_ + q * (hi_ - lo_);
      break;
    case DemandKind::TruncatedExponential:
      xi = lo_ - std::log1p(-q * normalizer()) / rate_;
      break;
  }
  return std::clamp(xi, lo_, hi_);
}

double DemandDistribution::sample(RngStream& rng) const { return quantile(rng.uniform(0.0, 1.0)); }

double DemandDistribution::expected_min(double q) const {
  if (q <= lo_) return q;
  const double upper = std::min(q, hi_);
  const double tail = q >= hi_ ? 0.0 : q * (1.0 - cdf(q));
  if (kind_ == DemandKind::Uniform) {
    return (upper * upper - lo_ * lo_) / (2.0 * (hi_ - lo_)) + tail;
  }
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [this](double xi) { return xi * density(xi); };
  const double body =
      gauss_kronrod<double, 21>::integrate(integrand, lo_, upper, 15, kQuadratureTolerance);
  return body + tail;
}

bool DemandDistribution::non_increasing_density() const {
  switch (kind_) {
    case DemandKind::Uniform:
    case DemandKind::TruncatedExponential:
      return true;
  }
  return false;
}

bool DemandDistribution::positive_on_support() const { return density(hi_) > 0.0; }

}  // namespace mcs
