#pragma once

#include <stdexcept>
#include <string>

namespace corrh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or point text. `position` is a 0-based column.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at column " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Input rejected on mathematical grounds (zero polynomial, univariate factor, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Elimination collapsed: the resultant vanishes identically, so the inputs share a
/// vertical component.
class DegenerateElimination : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A certified numerical step could not be completed within the bit budget.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// A combinatorial budget (recombination subsets, tree nodes, degree) was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace corrh
