#pragma once

#include <stdexcept>
#include <string>

namespace pkf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A detection box with non-positive width or height.
class InvalidDetection : public Error {
public:
  using Error::Error;
};

/// A box state with non-positive area or aspect ratio.
class DegenerateState : public Error {
public:
  using Error::Error;
};

/// Singular or indefinite matrix encountered during a solve.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Problem size exceeds a configured computational cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Malformed input file; carries the offending line number (1-based, 0 if unknown).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace pkf
