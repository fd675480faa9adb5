#pragma once

#include <stdexcept>

namespace diaghyp {

// Caller violated an operation's precondition (bad parameters, p | n, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance is larger than the configured desk-scale bound.
class DeskScaleExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace diaghyp
