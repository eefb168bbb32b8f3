#pragma once

#include <stdexcept>
#include <string>

namespace mcs {

// Argument outside the mathematical domain of an operation (negative
// allocation, price outside the pricing box, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Vector/matrix lengths that do not line up.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid configuration or scenario parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Object used in the wrong lifecycle state (e.g. incomplete buffer).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// NaN/Inf detected in a numeric procedure.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mcs
