#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mcs/errors.hpp"
#include "mcs/rl/environment.hpp"
#include "mcs/rl/policy.hpp"

namespace mcs::rl {

struct TrainConfig {
  double gamma = 0.9;
  double epsilon = 0.2;
  std::size_t steps_per_episode = 128;  // D
  int epochs = 10;                      // M
  double actor_lr = 3e-4;               // l1
  double critic_lr = 1e-5;              // l2
  int episodes = 500;
  std::uint64_t seed = 1;
  std::vector<std::size_t> hidden{64, 64};
  double log_std_init = -0.5;
};

void validate(const TrainConfig& config);

struct EpisodeStats {
  int episode = 0;
  double mean_reward = 0.0;
  double mean_payoff = 0.0;
  double surrogate = 0.0;          // clipped objective before the first update
  double critic_loss_first = 0.0;  // before the first critic step
  double critic_loss_last = 0.0;   // before the last critic step
  std::vector<double> mean_action;  // mean of the clamped actions actually posted
  std::vector<double> policy_std;   // exp(log_std) after the updates
};

struct TrainResult {
  PolicyParams policy;
  std::vector<EpisodeStats> trace;
};

/// Thrown when a parameter turns NaN/Inf; carries the last finite policy.
class TrainingAborted : public NumericError {
 public:
  TrainingAborted(const std::string& what, PolicyParams snapshot, int episode)
      : NumericError(what), snapshot_(std::move(snapshot)), episode_(episode) {}
  const PolicyParams& snapshot() const { return snapshot_; }
  int episode() const { return episode_; }

 private:
  PolicyParams snapshot_;
  int episode_;
};

/// Streams dedicated to the trainer within one seed.
inline constexpr std::uint64_t kTrainStream = 7;

/// The episode/update loop: D-step rollouts carrying state across episodes,
/// then M epochs of actor ascent on the clipped surrogate and critic descent
/// on the squared target error.
TrainResult train(Environment& env, const TrainConfig& config,
                  const std::function<void(const EpisodeStats&)>& on_episode = {});

}  // namespace mcs::rl
