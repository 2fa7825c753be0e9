#pragma once

#include <stdexcept>
#include <string>

namespace intricacy {

/// Malformed input: bad matrix, bad spec string, violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured computation cap (horizon, enumeration size, integer width) was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped at its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void warn(const std::string& message);

}  // namespace intricacy
