#pragma once

#include <stdexcept>
#include <string>

namespace pathregret {

/// An instance invariant does not hold. The message names the first violated
/// check and the offending index.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// The floating-point pipeline lost a structural invariant (e.g. breakpoint
/// ordering inside a reconstruction cell). Signals tolerance breakdown rather
/// than bad input.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pathregret
