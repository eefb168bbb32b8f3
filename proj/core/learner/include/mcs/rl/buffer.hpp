#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace mcs::rl {

struct StepRecord {
  std::vector<double> state;
  std::vector<double> action;  // pre-clamp sample
  double log_prob = 0.0;       // under the behaviour policy
  double reward = 0.0;
  double value = 0.0;          // critic estimate of `state` at collection time
};

/// Fixed-capacity rollout of D steps plus the bootstrap value V(s(D+1)).
class TrajectoryBuffer {
 public:
  explicit TrajectoryBuffer(std::size_t capacity) : capacity_(capacity) { records_.reserve(capacity); }

  void clear();
  /// Throws StateError when full.
  void push(StepRecord record);
  void set_bootstrap(double value) { bootstrap_ = value; }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  bool complete() const { return records_.size() == capacity_ && bootstrap_.has_value(); }

  const std::vector<StepRecord>& records() const { return records_; }
  const StepRecord& operator[](std::size_t k) const { return records_[k]; }
  /// Throws StateError if not yet set.
  double bootstrap_value() const;

 private:
  std::size_t capacity_;
  std::vector<StepRecord> records_;
  std::optional<double> bootstrap_;
};

}  // namespace mcs::rl
