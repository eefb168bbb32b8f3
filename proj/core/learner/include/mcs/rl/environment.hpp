#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mcs/rng.hpp"

namespace mcs::rl {

/// What the pricing agent gets back after posting an action: the next
/// observation (public game history) and its own reward/payoff. Nothing
/// about the followers' private parameters crosses this boundary.
struct StepOutcome {
  std::vector<double> observation;
  double reward = 0.0;
  double payoff = 0.0;  // unscaled leader payoff behind `reward`
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t observation_size() const = 0;
  virtual std::size_t action_size() const = 0;
  /// Actions are clamped by the environment to [0, action_upper()].
  virtual double action_upper() const = 0;

  virtual std::vector<double> reset(RngStream& rng) = 0;
  virtual StepOutcome step(std::span<const double> action) = 0;
};

}  // namespace mcs::rl
