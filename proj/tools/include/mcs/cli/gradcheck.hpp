#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mcs::cli {

struct CheckResult {
  std::string name;
  std::size_t probes = 0;
  std::size_t comparisons = 0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Registered checks, in table order.
const std::vector<std::string>& gradcheck_names();

/// Central-difference comparison of every analytic derivative in the
/// library on `probes` random instances per check. `corrupt` names a check
/// whose analytic values are scaled by 1.01 before comparison (test hook).
std::vector<CheckResult> run_gradcheck(std::uint64_t seed, std::size_t probes, const std::string& corrupt = {});

}  // namespace mcs::cli
