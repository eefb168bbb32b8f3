#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mcs/rl/buffer.hpp"
#include "mcs/rl/mlp.hpp"
#include "mcs/rl/policy.hpp"

namespace mcs::rl {

/// Three-piece clamp of a probability ratio to [1 - epsilon, 1 + epsilon].
double clip_ratio(double ratio, double epsilon);

/// Critic targets: sum_{l>=k} gamma^(l-k) r(l) + gamma^(D+1-k) V(s(D+1)).
/// Throws StateError on an incomplete buffer.
std::vector<double> discounted_targets(const TrajectoryBuffer& buffer, double gamma);

/// A(k) = target(k) - V(s(k)), using the values recorded at collection time.
std::vector<double> advantage_estimates(const TrajectoryBuffer& buffer, double gamma);

/// sum_k min(f(k) A(k), clip(f(k)) A(k)), f = pi_theta / pi_behaviour.
double clipped_surrogate(const PolicyParams& policy, const TrajectoryBuffer& buffer,
                         double epsilon, double gamma);

/// Same objective without the clip (for the theta == behaviour identity).
double unclipped_surrogate(const PolicyParams& policy, const TrajectoryBuffer& buffer, double gamma);

struct ActorGradients {
  MlpGradients actor;
  Eigen::VectorXd log_std;
};

/// Gradient of clipped_surrogate w.r.t. actor parameters and log_std.
ActorGradients ppo_actor_gradient(const PolicyParams& policy, const TrajectoryBuffer& buffer,
                                  double epsilon, double gamma);

struct CriticLoss {
  double loss = 0.0;
  MlpGradients grad;
};

/// sum_k (target(k) - V_omega(s(k)))^2 with the bootstrap target held fixed.
CriticLoss critic_loss_and_gradient(const PolicyParams& policy, const TrajectoryBuffer& buffer,
                                    double gamma);

}  // namespace mcs::rl
