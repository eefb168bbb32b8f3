#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mcs/rl/policy.hpp"

namespace mcs::rl {

inline constexpr const char* kCheckpointMagic = "mcs-ppo-checkpoint";
inline constexpr int kCheckpointVersion = 1;

/// Key/value pairs echoed into the checkpoint header (no whitespace in keys).
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Text record: magic + version, config echo, layer shapes, then row-major
/// parameter arrays with 17 significant digits.
void save_checkpoint(std::ostream& out, const PolicyParams& policy, const ConfigEcho& echo = {});

/// Throws StateError on a malformed or version-mismatched record.
PolicyParams load_checkpoint(std::istream& in, ConfigEcho* echo = nullptr);

}  // namespace mcs::rl
