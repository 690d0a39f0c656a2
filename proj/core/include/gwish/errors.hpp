#ifndef GWISH_ERRORS_HPP_
#define GWISH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gwish {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A series or iteration failed to reach the requested tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

// Adaptive quadrature ran out of subdivisions; carries the best value seen.
struct ToleranceNotReached : Error {
  double value;
  double error_estimate;
  ToleranceNotReached(const std::string& msg, double v, double e)
      : Error(msg), value(v), error_estimate(e) {}
};

// An integral that must be real came back with a large imaginary residue.
struct NonRealResult : Error {
  using Error::Error;
};

struct NotChordal : Error {
  using Error::Error;
};

struct CholeskyFailure : Error {
  using Error::Error;
};

struct DimensionTooHigh : Error {
  using Error::Error;
};

// Dispatcher found no deterministic route and the caller forbade Monte Carlo.
struct IntractableError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace gwish

#endif  // GWISH_ERRORS_HPP_
