#include "mcs/rl/buffer.hpp"

#include <utility>

#include "mcs/errors.hpp"

namespace mcs::rl {

void TrajectoryBuffer::clear() {
  records_.clear();
  bootstrap_.reset();
}

void TrajectoryBuffer::push(StepRecord record) {
  if (records_.size() >= capacity_) throw StateError("trajectory buffer is full");
  records_.push_back(std::move(record));
}

double TrajectoryBuffer::bootstrap_value() const {
  if (!bootstrap_) throw StateError("bootstrap value not set");
  return *bootstrap_;
}

}  // namespace mcs::rl
