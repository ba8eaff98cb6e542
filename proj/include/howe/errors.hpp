#pragma once

#include <stdexcept>
#include <string>

namespace howe {

// Bad input: non-prime p, malformed element text, singular curve, ...
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical invariant that must always hold did not. Never caught
// internally; the CLI maps it to exit status 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

}  // namespace detail
}  // namespace howe
