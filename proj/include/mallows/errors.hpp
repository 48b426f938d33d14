#pragma once

#include <stdexcept>
#include <string>

namespace mallows {

// Bad caller input: sizes, indices, parameters, malformed text.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Floating-point or quadrature failure that should never happen for valid input.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw InvalidArgument(what); }

inline void require(bool ok, const char* what) {
  if (!ok) fail(what);
}

}  // namespace detail
}  // namespace mallows
