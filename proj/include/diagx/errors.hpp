#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diagx {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch, empty matrix, ragged rows, out-of-range index.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinity rejected at construction or parse time.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Iterative kernel exceeded its iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, int iterations)
      : Error(msg), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_ = 0;
};

/// Linear solve on a matrix that is singular to working tolerance.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries the 1-based line where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  explicit ParseError(const std::string& msg) : Error(msg), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

/// An operation's documented precondition does not hold (for example,
/// eigendecomposition of a matrix that is not certified diagonalizable).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computed basis is too ill-conditioned to be trusted.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Shock scenario references unknown sectors or invalid magnitudes.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

/// Table operations that would leave no sectors behind.
class DegenerateTableError : public Error {
 public:
  using Error::Error;
};

/// Fixture profile that no matrix can satisfy.
class InfeasibleProfileError : public Error {
 public:
  using Error::Error;
};

}  // namespace diagx
