#pragma once

#include <string_view>

#include "mcs/rng.hpp"

namespace mcs {

enum class DemandKind { Uniform, TruncatedExponential };

std::string_view to_string(DemandKind kind);

/// A follower's random own-demand on a bounded support [lo, hi].
///
/// Uniform is the family used in all experiments. The truncated exponential
/// exists so the rest of the library never assumes uniformity; its expected
/// served demand goes through numerical quadrature.
class DemandDistribution {
 public:
  static DemandDistribution uniform(double lo, double hi);
  /// Exponential with the given rate, truncated to [lo, hi]. rate > 0.
  static DemandDistribution truncated_exponential(double lo, double hi, double rate);

  DemandKind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double rate() const { return rate_; }

  /// Density on the closed support, 0 outside.
  double density(double xi) const;
  /// d/dxi of the density on the support, 0 outside.
  double density_slope(double xi) const;
  double cdf(double xi) const;
  /// inf{xi : F(xi) >= q}; quantile(0) = lo and quantile(1) = hi.
  double quantile(double q) const;
  double sample(RngStream& rng) const;

  /// E[min(xi, q)]: closed form for uniform, adaptive quadrature otherwise.
  double expected_min(double q) const;
  double mean() const { return expected_min(hi_); }

  bool non_increasing_density() const;
  /// f > 0 on [lo, hi).
  bool positive_on_support() const;
  /// Admission check for equilibrium solving.
  bool admissible() const { return non_increasing_density() && positive_on_support(); }

 private:
  DemandDistribution(DemandKind kind, double lo, double hi, double rate);

  double normalizer() const;  // truncated exponential mass on [lo, hi]

  DemandKind kind_;
  double lo_;
  double hi_;
  double rate_;
};

}  // namespace mcs
