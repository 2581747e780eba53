#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geokernels {

/// Invalid numeric parameter (negative eigenvalue, nonpositive lengthscale, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data that violates a structural invariant of a space or problem.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. The message carries the offending line number.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Factorization or eigensolver failure, non-finite intermediate results.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geokernels
