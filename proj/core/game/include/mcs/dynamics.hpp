#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "mcs/model.hpp"
#include "mcs/rl/environment.hpp"
#include "mcs/rl/trainer.hpp"
#include "mcs/rng.hpp"

namespace mcs {

/// Public configuration of the repeated pricing game.
struct EnvConfig {
  std::size_t history_length = 1;   // L rounds kept in the state
  double reward_scale = 0.01;       // reward = reward_scale * leader payoff
  double p_max = 1.0;               // action box [0, p_max]^N
  std::size_t episode_length = 128; // D, steps per rollout / baseline episode
};

void validate(const EnvConfig& config);

struct Round {
  PriceProfile prices;
  AllocationProfile allocations;
};

/// The last L rounds of play, oldest first.
class GameState {
 public:
  GameState() = default;
  explicit GameState(std::deque<Round> rounds) : rounds_(std::move(rounds)) {}

  const std::deque<Round>& rounds() const { return rounds_; }
  std::size_t length() const { return rounds_.size(); }
  const Round& newest() const { return rounds_.back(); }

  /// Drops the oldest round and appends `round`.
  GameState advanced(Round round) const;

  /// [p(t-L), x(t-L), ..., p(t-1), x(t-1)], length 2 N L.
  std::vector<double> flatten() const;

  friend bool operator==(const GameState& a, const GameState& b) {
    if (a.rounds_.size() != b.rounds_.size()) return false;
    for (std::size_t i = 0; i < a.rounds_.size(); ++i) {
      if (!(a.rounds_[i].prices == b.rounds_[i].prices) ||
          !(a.rounds_[i].allocations == b.rounds_[i].allocations)) {
        return false;
      }
    }
    return true;
  }

 private:
  std::deque<Round> rounds_;
};

struct Transition {
  GameState state;
  PriceProfile action;          // after clamping to [0, p_max]
  AllocationProfile response;
  double reward = 0.0;
  GameState next_state;
  double sp_payoff = 0.0;
  std::vector<double> mu_payoffs;
  bool clamped = false;         // some action component was out of range
};

/// L rounds with uniform random prices on [0, p_max] and the followers'
/// best responses to them.
GameState env_reset(const Scenario& scenario, const EnvConfig& config, RngStream& rng);

/// Deterministic history from given prices (one profile per round).
GameState env_reset_with_prices(const Scenario& scenario, const EnvConfig& config,
                                const std::vector<PriceProfile>& prices);

/// One round: clamp the action, let followers best-respond, score it.
Transition env_step(const Scenario& scenario, const EnvConfig& config, const GameState& state,
                    const PriceProfile& action);

/// Constant p_max on every MU.
PriceProfile greedy_policy(std::size_t num_mus, const EnvConfig& config);

/// Independent uniform prices on [0, p_max].
PriceProfile random_policy(std::size_t num_mus, const EnvConfig& config, RngStream& rng);

/// Step-trace CSV: episode,step,p_1..p_N,x_1..x_N,sp_payoff,reward,mu_payoff_1..N,clamped_flag
void write_step_csv_header(std::ostream& out, std::size_t num_mus);
void write_step_csv_row(std::ostream& out, int episode, std::size_t step, const Transition& t);

/// Adapter exposing the game to a learner through the public interface only.
class GameEnvironment final : public rl::Environment {
 public:
  using Observer = std::function<void(const Transition&)>;

  GameEnvironment(Scenario scenario, EnvConfig config, Observer observer = {});

  std::size_t observation_size() const override;
  std::size_t action_size() const override { return scenario_.size(); }
  double action_upper() const override { return config_.p_max; }
  std::vector<double> reset(RngStream& rng) override;
  rl::StepOutcome step(std::span<const double> action) override;

  const GameState& state() const { return state_; }

 private:
  Scenario scenario_;
  EnvConfig config_;
  Observer observer_;
  GameState state_;
};

/// Builds the environment for `scenario` and runs the learner on it. The
/// episode length D must be the same in both configs.
rl::TrainResult train(const Scenario& scenario, const EnvConfig& env_config,
                      const rl::TrainConfig& train_config,
                      const GameEnvironment::Observer& observer = {},
                      const std::function<void(const rl::EpisodeStats&)>& on_episode = {});

}  // namespace mcs
