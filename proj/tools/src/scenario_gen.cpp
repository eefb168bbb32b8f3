#include "mcs/cli/scenario_gen.hpp"

#include <string>
#include <vector>

#include "mcs/errors.hpp"
#include "mcs/rng.hpp"

namespace mcs::cli {

namespace {

constexpr int kMaxDraws = 1'000'000;

double draw(const Range& r, RngStream& rng) {
  if (r.lo == r.hi) return r.lo;
  return r.lo + (r.hi - r.lo) * rng.uniform(0.0, 1.0);
}

}  // namespace

DemandDistribution make_demand(const DemandSpec& spec) {
  if (spec.kind == "uniform") return DemandDistribution::uniform(spec.lo, spec.hi);
  if (spec.kind == "truncated_exponential") {
    return DemandDistribution::truncated_exponential(spec.lo, spec.hi, spec.rate);
  }
  throw ConfigError("unknown demand family '" + spec.kind + "'");
}

Scenario generate_scenario(const GenerationSpec& spec, std::uint64_t seed) {
  std::vector<MuProfile> mus;
  if (!spec.mus.empty()) {
    for (const MuSpec& m : spec.mus) mus.emplace_back(m.tau, m.delta, m.cost, make_demand(m.demand));
    return Scenario(spec.lambda, std::move(mus), seed);
  }

  if (!(spec.delta.hi > spec.cost.lo)) {
    throw ConfigError("scenario: empty feasible region, every delta in [" + std::to_string(spec.delta.lo) + ", " +
                      std::to_string(spec.delta.hi) + "] is at most every cost in [" +
                      std::to_string(spec.cost.lo) + ", " + std::to_string(spec.cost.hi) + "]");
  }
  const DemandDistribution demand = make_demand(spec.demand);
  RngStream rng(seed, kScenarioStream);
  for (std::size_t n = 0; n < spec.num_mus; ++n) {
    int attempts = 0;
    while (true) {
      const double cost = draw(spec.cost, rng);
      const double delta = draw(spec.delta, rng);
      if (delta > cost) {
        mus.emplace_back(spec.tau, delta, cost, demand);
        break;
      }
      if (++attempts >= kMaxDraws) {
        throw ConfigError("scenario: feasible region delta > cost is too thin to sample");
      }
    }
  }
  return Scenario(spec.lambda, std::move(mus), seed);
}

GenerationSpec delta_trend_preset() {
  GenerationSpec spec;
  spec.cost = {0.0, 0.0};
  spec.delta = {0.0, 1.0};
  return spec;
}

GenerationSpec cost_trend_preset() {
  GenerationSpec spec;
  spec.delta = {1.0, 1.0};
  spec.cost = {0.0, 1.0};
  return spec;
}

}  // namespace mcs::cli
