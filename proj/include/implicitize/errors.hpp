#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace implicitize {

/// Bad user input: malformed polynomials, mismatched dimensions, invalid flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial text that could not be parsed; carries the character offset of
/// the offending token in the source string.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Numerical breakdown: no witness points found, inconsistent dimension
/// samples, every path lost, and similar conditions that fresh randomness
/// did not cure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace implicitize
