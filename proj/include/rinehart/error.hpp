#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rinehart {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (polynomials, spec files).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what), position_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Violated precondition of an operation (wrong sizes, incompatible rings).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A product or rewrite would leave the order-N truncation.
class OrderOverflow : public Error {
public:
  using Error::Error;
};

/// A subspace that was required to be contained in another is not.
class ContainmentError : public Error {
public:
  using Error::Error;
};

/// A structural invariant failed during a computation (e.g. d∘d ≠ 0).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

}  // namespace rinehart
