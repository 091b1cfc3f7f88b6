#pragma once

#include <stdexcept>
#include <string>

namespace sclab {

/// Rejected input: bad arguments, malformed config, out-of-range parameters.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric failure that should not occur on valid input (signals a bug).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sclab
