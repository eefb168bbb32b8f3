#pragma once

#include <filesystem>
#include <iosfwd>

#include "mcs/cli/config.hpp"

namespace mcs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConvergence = 3;
inline constexpr int kExitNumeric = 4;

/// Each command validates everything it needs before creating `out`, so a
/// configuration error leaves no files behind. Diagnostics go to `log`.
int cmd_static(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmd_train(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmd_sweep(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmd_gradcheck(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);

}  // namespace mcs::cli
