#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linex {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input to a sorted-data routine is not in ascending order.
class SortednessError : public Error {
public:
  using Error::Error;
};

/// A run parameter (epsilon, minPoints, period, ...) is out of its valid range.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A value lies outside the domain the routine operates on (NaN, infinity,
/// angle outside [0, period), ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class BoundsError : public Error {
public:
  using Error::Error;
};

/// Caller broke a documented precondition (e.g. expanding from a non-core point).
class ContractError : public Error {
public:
  using Error::Error;
};

/// Line or fit is not defined: A = B = 0, fewer than two points, all points coincide.
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// Scatter is isotropic so no fit direction is preferred.
class OrientationUndefinedError : public Error {
public:
  using Error::Error;
};

/// Resultant vector of a circular mean has (numerically) zero length.
class UndefinedMeanError : public Error {
public:
  using Error::Error;
};

class InsufficientDataError : public Error {
public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Well-formed records that do not agree with each other (e.g. record count vs header).
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Invalid room geometry for the synthetic scan generator.
class ModelError : public Error {
public:
  using Error::Error;
};

} // namespace linex
