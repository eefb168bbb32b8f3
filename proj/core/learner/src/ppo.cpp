#include "mcs/rl/ppo.hpp"

#include <algorithm>
#include <cmath>

#include "mcs/errors.hpp"

namespace mcs::rl {

namespace {

void require_complete(const TrajectoryBuffer& buffer) {
  if (!buffer.complete()) throw StateError("trajectory buffer is incomplete");
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

double clip_ratio(double ratio, double epsilon) {
  return std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
}

std::vector<double> discounted_targets(const TrajectoryBuffer& buffer, double gamma) {
  require_complete(buffer);
  const std::size_t d = buffer.size();
  std::vector<double> targets(d);
  double running = buffer.bootstrap_value();
  for (std::size_t k = d; k-- > 0;) {
    running = buffer[k].reward + gamma * running;
    targets[k] = running;
  }
  return targets;
}

std::vector<double> advantage_estimates(const TrajectoryBuffer& buffer, double gamma) {
  std::vector<double> adv = discounted_targets(buffer, gamma);
  for (std::size_t k = 0; k < adv.size(); ++k) adv[k] -= buffer[k].value;
  return adv;
}

double clipped_surrogate(const PolicyParams& policy, const TrajectoryBuffer& buffer,
                         double epsilon, double gamma) {
  const std::vector<double> adv = advantage_estimates(buffer, gamma);
  double total = 0.0;
  for (std::size_t k = 0; k < buffer.size(); ++k) {
    const StepRecord& rec = buffer[k];
    const double ratio = std::exp(log_prob(policy, rec.state, rec.action) - rec.log_prob);
    total += std::min(ratio * adv[k], clip_ratio(ratio, epsilon) * adv[k]);
  }
  return total;
}

double unclipped_surrogate(const PolicyParams& policy, const TrajectoryBuffer& buffer, double gamma) {
  const std::vector<double> adv = advantage_estimates(buffer, gamma);
  double total = 0.0;
  for (std::size_t k = 0; k < buffer.size(); ++k) {
    const StepRecord& rec = buffer[k];
    total += std::exp(log_prob(policy, rec.state, rec.action) - rec.log_prob) * adv[k];
  }
  return total;
}

ActorGradients ppo_actor_gradient(const PolicyParams& policy, const TrajectoryBuffer& buffer,
                                  double epsilon, double gamma) {
  const std::vector<double> adv = advantage_estimates(buffer, gamma);
  const auto n_act = static_cast<Eigen::Index>(policy.action_size());
  const Eigen::VectorXd inv_var = (-2.0 * policy.log_std).array().exp();

  ActorGradients out{policy.actor.zero_gradients(), Eigen::VectorXd::Zero(n_act)};
  for (std::size_t k = 0; k < buffer.size(); ++k) {
    const StepRecord& rec = buffer[k];
    const Eigen::VectorXd state = to_vector(rec.state);
    const Eigen::VectorXd mean = policy.actor.forward(state);
    const Eigen::VectorXd action = to_vector(rec.action);
    const Eigen::VectorXd diff = action - mean;

    double lp = 0.0;
    for (Eigen::Index i = 0; i < n_act; ++i) {
      lp += -0.5 * diff[i] * diff[i] * inv_var[i] - policy.log_std[i];
    }
    lp -= 0.91893853320467274178 * static_cast<double>(n_act);
    const double ratio = std::exp(lp - rec.log_prob);

    // Flat (clipped) branch of the min contributes nothing.
    const bool clipped = (adv[k] > 0.0 && ratio > 1.0 + epsilon) ||
                         (adv[k] < 0.0 && ratio < 1.0 - epsilon);
    if (clipped || adv[k] == 0.0) continue;

    const double coef = adv[k] * ratio;  // d/d(log pi) of ratio * A
    const Eigen::VectorXd upstream = coef * diff.cwiseProduct(inv_var);
    policy.actor.accumulate_backward(state, upstream, out.actor);
    for (Eigen::Index i = 0; i < n_act; ++i) {
      out.log_std[i] += coef * (diff[i] * diff[i] * inv_var[i] - 1.0);
    }
  }
  return out;
}

CriticLoss critic_loss_and_gradient(const PolicyParams& policy, const TrajectoryBuffer& buffer,
                                    double gamma) {
  const std::vector<double> targets = discounted_targets(buffer, gamma);
  CriticLoss out{0.0, policy.critic.zero_gradients()};
  Eigen::VectorXd upstream(1);
  for (std::size_t k = 0; k < buffer.size(); ++k) {
    const Eigen::VectorXd state = to_vector(buffer[k].state);
    const double residual = targets[k] - policy.critic.forward(state)[0];
    out.loss += residual * residual;
    upstream[0] = -2.0 * residual;
    policy.critic.accumulate_backward(state, upstream, out.grad);
  }
  return out;
}

}  // namespace mcs::rl
