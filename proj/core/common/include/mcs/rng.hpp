#pragma once

#include <cstdint>
#include <random>

namespace mcs {

// A seeded, copyable random stream. Two streams built from the same
// (seed, stream_id) produce the same sequence; copying a stream copies its
// position, so a copy replays exactly the draws of the original.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  std::mt19937_64& engine() { return engine_; }

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace mcs
