#pragma once

#include <stdexcept>
#include <string>

namespace psigraph {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad grammar, invalid JSON, out-of-range parameters.
struct InputError : Error {
  using Error::Error;
};

// Classification operations require a connected graph; this error is distinct
// so callers can tell "disconnected input" from other input problems.
struct DisconnectedGraphError : InputError {
  using InputError::InputError;
};

// An enumeration or contraction would exceed a configured size cap.
struct SizeCapError : InputError {
  using InputError::InputError;
};

}  // namespace psigraph
