#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mcs/dynamics.hpp"
#include "mcs/leader.hpp"
#include "mcs/rl/trainer.hpp"

namespace mcs::cli {

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

struct DemandSpec {
  std::string kind = "uniform";  // uniform | truncated_exponential
  double lo = 0.0;
  double hi = 25.0;
  double rate = 0.1;              // truncated_exponential only
};

struct MuSpec {
  double tau = 20.0;
  double delta = 1.0;
  double cost = 0.0;
  DemandSpec demand;
};

/// How a scenario is built: either an explicit MU list or random draws of
/// (cost, delta) from ranges, rejecting pairs with delta <= cost.
struct GenerationSpec {
  double lambda = 50.0;
  std::size_t num_mus = 5;
  double tau = 20.0;
  DemandSpec demand;
  Range cost{0.0, 1.0};
  Range delta{0.0, 1.0};
  std::optional<std::uint64_t> seed;  // defaults to the run seed
  std::vector<MuSpec> mus;            // explicit list; overrides the draws when non-empty
};

struct BaselineConfig {
  std::size_t random_episodes = 100;  // random-policy episodes of D steps each
  std::size_t tail_episodes = 50;     // trained-policy window for the comparison
};

struct SweepConfig {
  std::string axis;  // delta | cost | demand_upper | lambda
  std::vector<double> values;
  std::string method = "static";  // static | trained (prices from a trained policy)
};

struct OutputConfig {
  bool svg = false;
  bool steps_trace = false;
};

struct GradcheckConfig {
  std::size_t probes = 10;
  std::string corrupt;  // name of a check whose analytic gradient is perturbed
};

struct RunConfig {
  std::uint64_t seed = 1;
  GenerationSpec scenario;
  SolverConfig solver;
  EnvConfig env;
  rl::TrainConfig train;
  BaselineConfig baselines;
  SweepConfig sweep;
  OutputConfig output;
  GradcheckConfig gradcheck;
};

inline const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"delta", "cost", "demand_upper", "lambda"};
  return axes;
}

/// Parses JSON text; syntax errors report line and column, schema errors
/// report the dotted field path. Throws ConfigError.
nlohmann::json parse_config_text(const std::string& text, const std::string& origin);
nlohmann::json load_config_file(const std::filesystem::path& path);

/// Applies "a.b.c=value"; value is read as JSON when it parses, else as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Converts a document to a validated config. `require_scenario` demands
/// an explicit scenario.lambda.
RunConfig build_config(const nlohmann::json& doc, bool require_scenario = true);

/// The fully resolved configuration, defaults included.
nlohmann::json to_json(const RunConfig& config);

void validate(const RunConfig& config);

}  // namespace mcs::cli
