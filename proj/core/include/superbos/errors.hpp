#pragma once

#include <stdexcept>
#include <string>

namespace superbos {

// Bad input: malformed arguments, wrong parity, singular bodies, points outside
// the domain of a formula. The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure could not produce a trustworthy value (aliasing,
// divergence, exhausted series).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace superbos
