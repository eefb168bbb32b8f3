#pragma once

#include <cstdint>

#include "mcs/cli/config.hpp"
#include "mcs/model.hpp"

namespace mcs::cli {

/// Stream used for scenario draws within a seed.
inline constexpr std::uint64_t kScenarioStream = 3;

DemandDistribution make_demand(const DemandSpec& spec);

/// Builds the scenario from an explicit MU list, or draws (cost, delta)
/// uniformly from the configured ranges, redrawing until delta > cost.
/// Throws ConfigError when no pair with delta > cost exists.
Scenario generate_scenario(const GenerationSpec& spec, std::uint64_t seed);

/// MUs with cost 0 and delta drawn from (0, 1].
GenerationSpec delta_trend_preset();
/// MUs with delta 1 and cost drawn from [0, 1).
GenerationSpec cost_trend_preset();

}  // namespace mcs::cli
