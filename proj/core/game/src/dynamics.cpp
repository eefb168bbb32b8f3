#include "mcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mcs/csv.hpp"
#include "mcs/errors.hpp"
#include "mcs/follower.hpp"

namespace mcs {

void validate(const EnvConfig& config) {
  if (config.history_length < 1) throw ConfigError("env.history_length must be >= 1");
  if (!(config.reward_scale > 0.0)) throw ConfigError("env.reward_scale must be positive");
  if (!(config.p_max > 0.0) || !std::isfinite(config.p_max)) throw ConfigError("env.p_max must be positive");
  if (config.episode_length < 1) throw ConfigError("env.episode_length must be >= 1");
}

GameState GameState::advanced(Round round) const {
  std::deque<Round> next = rounds_;
  if (!next.empty()) next.pop_front();
  next.push_back(std::move(round));
  return GameState(std::move(next));
}

std::vector<double> GameState::flatten() const {
  std::vector<double> out;
  for (const Round& r : rounds_) {
    out.insert(out.end(), r.prices.p.begin(), r.prices.p.end());
    out.insert(out.end(), r.allocations.x.begin(), r.allocations.x.end());
  }
  return out;
}

GameState env_reset_with_prices(const Scenario& scenario, const EnvConfig& config,
                                const std::vector<PriceProfile>& prices) {
  validate(config);
  if (prices.size() != config.history_length) {
    throw ShapeError("initial history needs exactly history_length price profiles");
  }
  std::deque<Round> rounds;
  for (const PriceProfile& p : prices) rounds.push_back({p, respond(scenario, p)});
  return GameState(std::move(rounds));
}

GameState env_reset(const Scenario& scenario, const EnvConfig& config, RngStream& rng) {
  validate(config);
  std::vector<PriceProfile> prices(config.history_length);
  for (PriceProfile& p : prices) p = random_policy(scenario.size(), config, rng);
  return env_reset_with_prices(scenario, config, prices);
}

Transition env_step(const Scenario& scenario, const EnvConfig& config, const GameState& state,
                    const PriceProfile& action) {
  if (action.size() != scenario.size()) throw ShapeError("action length does not match scenario");
  Transition t;
  t.state = state;
  t.action = action;
  for (double& p : t.action.p) {
    const double clamped = std::isnan(p) ? 0.0 : std::clamp(p, 0.0, config.p_max);
    if (clamped != p) t.clamped = true;
    p = clamped;
  }
  t.response = respond(scenario, t.action);
  t.sp_payoff = sp_payoff(t.response, t.action, scenario.lambda());
  t.reward = config.reward_scale * t.sp_payoff;
  t.mu_payoffs.reserve(scenario.size());
  for (std::size_t n = 0; n < scenario.size(); ++n) {
    t.mu_payoffs.push_back(mu_payoff(scenario.mu(n), t.response[n], t.action[n]));
  }
  t.next_state = state.advanced({t.action, t.response});
  return t;
}

PriceProfile greedy_policy(std::size_t num_mus, const EnvConfig& config) {
  return PriceProfile{std::vector<double>(num_mus, config.p_max)};
}

PriceProfile random_policy(std::size_t num_mus, const EnvConfig& config, RngStream& rng) {
  PriceProfile p;
  p.p.reserve(num_mus);
  for (std::size_t n = 0; n < num_mus; ++n) p.p.push_back(rng.uniform(0.0, config.p_max));
  return p;
}

void write_step_csv_header(std::ostream& out, std::size_t num_mus) {
  out << "episode,step";
  for (std::size_t n = 1; n <= num_mus; ++n) out << ",p_" << n;
  for (std::size_t n = 1; n <= num_mus; ++n) out << ",x_" << n;
  out << ",sp_payoff,reward";
  for (std::size_t n = 1; n <= num_mus; ++n) out << ",mu_payoff_" << n;
  out << ",clamped_flag\n";
}

void write_step_csv_row(std::ostream& out, int episode, std::size_t step, const Transition& t) {
  out << episode << ',' << step;
  for (double p : t.action.p) out << ',' << format_double(p);
  for (double x : t.response.x) out << ',' << format_double(x);
  out << ',' << format_double(t.sp_payoff) << ',' << format_double(t.reward);
  for (double u : t.mu_payoffs) out << ',' << format_double(u);
  out << ',' << (t.clamped ? 1 : 0) << '\n';
}

GameEnvironment::GameEnvironment(Scenario scenario, EnvConfig config, Observer observer)
    : scenario_(std::move(scenario)), config_(config), observer_(std::move(observer)) {
  validate(config_);
}

std::size_t GameEnvironment::observation_size() const {
  return 2 * scenario_.size() * config_.history_length;
}

std::vector<double> GameEnvironment::reset(RngStream& rng) {
  state_ = env_reset(scenario_, config_, rng);
  return state_.flatten();
}

rl::StepOutcome GameEnvironment::step(std::span<const double> action) {
  Transition t = env_step(scenario_, config_, state_, PriceProfile{{action.begin(), action.end()}});
  if (observer_) observer_(t);
  state_ = t.next_state;
  return {state_.flatten(), t.reward, t.sp_payoff};
}

rl::TrainResult train(const Scenario& scenario, const EnvConfig& env_config,
                      const rl::TrainConfig& train_config, const GameEnvironment::Observer& observer,
                      const std::function<void(const rl::EpisodeStats&)>& on_episode) {
  if (env_config.episode_length != train_config.steps_per_episode) {
    throw ConfigError("env.episode_length and train.steps_per_episode must agree");
  }
  GameEnvironment env(scenario, env_config, observer);
  return rl::train(env, train_config, on_episode);
}

}  // namespace mcs
