#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "mcs/rl/mlp.hpp"
#include "mcs/rng.hpp"

namespace mcs::rl {

inline constexpr double kLogStdMin = -5.0;
inline constexpr double kLogStdMax = 1.0;

/// Actor (squashed Gaussian mean), state-independent log std, and critic.
struct PolicyParams {
  Mlp actor;
  Eigen::VectorXd log_std;
  Mlp critic;

  double p_max() const { return actor.output_scale(); }
  std::size_t observation_size() const { return actor.input_size(); }
  std::size_t action_size() const { return actor.output_size(); }
  bool all_finite() const { return actor.all_finite() && critic.all_finite() && log_std.allFinite(); }
  void clamp_log_std();
};

struct PolicyShape {
  std::size_t observation_size = 0;
  std::size_t action_size = 0;
  double p_max = 1.0;
  std::vector<std::size_t> hidden{64, 64};
  double log_std_init = -0.5;
  double actor_output_gain = 0.01;
};

PolicyParams init_policy(const PolicyShape& shape, RngStream& rng);

struct ActionSample {
  std::vector<double> action;  // pre-clamp Gaussian draw
  double log_prob = 0.0;
};

Eigen::VectorXd action_mean(const PolicyParams& policy, std::span<const double> observation);
double state_value(const PolicyParams& policy, std::span<const double> observation);

/// a ~ N(mean(s), diag(exp(log_std))^2); log_prob is the density of the
/// returned (unclamped) draw.
ActionSample policy_sample(const PolicyParams& policy, std::span<const double> observation,
                           RngStream& rng);

double log_prob(const PolicyParams& policy, std::span<const double> observation,
                std::span<const double> action);

}  // namespace mcs::rl
