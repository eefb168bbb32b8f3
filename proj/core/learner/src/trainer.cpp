#include "mcs/rl/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcs/rl/buffer.hpp"
#include "mcs/rl/ppo.hpp"
#include "mcs/rng.hpp"

namespace mcs::rl {

void validate(const TrainConfig& config) {
  if (!(config.gamma >= 0.0 && config.gamma <= 1.0)) throw ConfigError("train.gamma must lie in [0, 1]");
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) throw ConfigError("train.epsilon must lie in (0, 1)");
  if (config.steps_per_episode < 1) throw ConfigError("train.steps_per_episode must be >= 1");
  if (config.epochs < 1) throw ConfigError("train.epochs must be >= 1");
  if (!(config.actor_lr > 0.0)) throw ConfigError("train.actor_lr must be positive");
  if (!(config.critic_lr > 0.0)) throw ConfigError("train.critic_lr must be positive");
  if (config.episodes < 1) throw ConfigError("train.episodes must be >= 1");
  for (std::size_t h : config.hidden) {
    if (h == 0) throw ConfigError("train.hidden sizes must be positive");
  }
}

TrainResult train(Environment& env, const TrainConfig& config,
                  const std::function<void(const EpisodeStats&)>& on_episode) {
  validate(config);
  RngStream rng(config.seed, kTrainStream);

  PolicyShape shape;
  shape.observation_size = env.observation_size();
  shape.action_size = env.action_size();
  shape.p_max = env.action_upper();
  shape.hidden = config.hidden;
  shape.log_std_init = config.log_std_init;

  TrainResult result;
  result.policy = init_policy(shape, rng);
  PolicyParams& policy = result.policy;
  const double upper = env.action_upper();

  TrajectoryBuffer buffer(config.steps_per_episode);
  std::vector<double> observation = env.reset(rng);

  for (int episode = 0; episode < config.episodes; ++episode) {
    buffer.clear();
    EpisodeStats stats;
    stats.episode = episode;
    stats.mean_action.assign(env.action_size(), 0.0);

    for (std::size_t t = 0; t < config.steps_per_episode; ++t) {
      ActionSample sample = policy_sample(policy, observation, rng);
      const double value = state_value(policy, observation);
      StepOutcome out = env.step(sample.action);

      stats.mean_reward += out.reward;
      stats.mean_payoff += out.payoff;
      for (std::size_t i = 0; i < sample.action.size(); ++i) {
        stats.mean_action[i] += std::clamp(sample.action[i], 0.0, upper);
      }
      buffer.push({std::move(observation), std::move(sample.action), sample.log_prob, out.reward, value});
      observation = std::move(out.observation);
    }
    buffer.set_bootstrap(state_value(policy, observation));

    const auto d = static_cast<double>(config.steps_per_episode);
    stats.mean_reward /= d;
    stats.mean_payoff /= d;
    for (double& a : stats.mean_action) a /= d;

    const PolicyParams before = policy;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      if (epoch == 0) stats.surrogate = clipped_surrogate(policy, buffer, config.epsilon, config.gamma);
      ActorGradients actor = ppo_actor_gradient(policy, buffer, config.epsilon, config.gamma);
      CriticLoss critic = critic_loss_and_gradient(policy, buffer, config.gamma);
      if (epoch == 0) stats.critic_loss_first = critic.loss;
      stats.critic_loss_last = critic.loss;

      policy.actor.apply(actor.actor, config.actor_lr);
      policy.log_std += config.actor_lr * actor.log_std;
      policy.clamp_log_std();
      policy.critic.apply(critic.grad, -config.critic_lr);
    }

    if (!policy.all_finite()) {
      throw TrainingAborted("non-finite policy parameters after episode " + std::to_string(episode),
                            before, episode);
    }
    for (Eigen::Index i = 0; i < policy.log_std.size(); ++i) {
      stats.policy_std.push_back(std::exp(policy.log_std[i]));
    }
    if (on_episode) on_episode(stats);
    result.trace.push_back(std::move(stats));
  }
  return result;
}

}  // namespace mcs::rl
