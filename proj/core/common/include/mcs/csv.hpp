#pragma once

#include <cstdio>
#include <string>

namespace mcs {

/// Shortest-safe decimal form with 17 significant digits, so a 64-bit
/// double round-trips exactly through text.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace mcs
