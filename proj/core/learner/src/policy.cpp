#include "mcs/rl/policy.hpp"

#include <algorithm>
#include <cmath>

#include "mcs/errors.hpp"

namespace mcs::rl {

namespace {

Eigen::VectorXd to_vector(std::span<const double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2 pi)

}  // namespace

void PolicyParams::clamp_log_std() {
  for (Eigen::Index i = 0; i < log_std.size(); ++i) {
    log_std[i] = std::clamp(log_std[i], kLogStdMin, kLogStdMax);
  }
}

PolicyParams init_policy(const PolicyShape& shape, RngStream& rng) {
  if (shape.observation_size == 0 || shape.action_size == 0) {
    throw ShapeError("policy needs nonzero observation and action sizes");
  }
  std::vector<std::size_t> actor_sizes{shape.observation_size};
  actor_sizes.insert(actor_sizes.end(), shape.hidden.begin(), shape.hidden.end());
  std::vector<std::size_t> critic_sizes = actor_sizes;
  actor_sizes.push_back(shape.action_size);
  critic_sizes.push_back(1);

  PolicyParams policy;
  policy.actor = Mlp::random(actor_sizes, OutputActivation::ScaledSigmoid, shape.p_max, rng,
                             shape.actor_output_gain);
  policy.critic = Mlp::random(critic_sizes, OutputActivation::Linear, 1.0, rng);
  policy.log_std =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(shape.action_size), shape.log_std_init);
  policy.clamp_log_std();
  return policy;
}

Eigen::VectorXd action_mean(const PolicyParams& policy, std::span<const double> observation) {
  return policy.actor.forward(to_vector(observation));
}

double state_value(const PolicyParams& policy, std::span<const double> observation) {
  return policy.critic.forward(to_vector(observation))[0];
}

ActionSample policy_sample(const PolicyParams& policy, std::span<const double> observation,
                           RngStream& rng) {
  const Eigen::VectorXd mean = action_mean(policy, observation);
  ActionSample out;
  out.action.resize(static_cast<std::size_t>(mean.size()));
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double z = rng.normal();
    const double sigma = std::exp(policy.log_std[i]);
    out.action[static_cast<std::size_t>(i)] = mean[i] + sigma * z;
    out.log_prob += -0.5 * z * z - policy.log_std[i] - kHalfLog2Pi;
  }
  return out;
}

double log_prob(const PolicyParams& policy, std::span<const double> observation,
                std::span<const double> action) {
  const Eigen::VectorXd mean = action_mean(policy, observation);
  if (action.size() != static_cast<std::size_t>(mean.size())) {
    throw ShapeError("action length does not match policy");
  }
  double lp = 0.0;
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double z = (action[static_cast<std::size_t>(i)] - mean[i]) * std::exp(-policy.log_std[i]);
    lp += -0.5 * z * z - policy.log_std[i] - kHalfLog2Pi;
  }
  return lp;
}

}  // namespace mcs::rl
