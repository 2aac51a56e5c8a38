#pragma once

#include <stdexcept>
#include <string>

namespace zseries {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text. `line` is 1-based (0 when the input was a single token);
/// `column` is the 1-based character position of the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Argument outside the mathematical domain of an operation (Z <= 0, odd
/// half-power of a negative base, lambda beyond lambda_cr, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Order or index outside the available range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Coefficient table violates its structural invariants (gap, duplicate,
/// empty, wrong analytic head). `order` is the offending n or -1.
class StructureError : public Error {
 public:
  StructureError(const std::string& what, long order) : Error(what), order_(order) {}
  long order() const noexcept { return order_; }

 private:
  long order_;
};

/// Wrong number of inputs for an operation (node count vs. exponent ladder,
/// too few points in a ratio window).
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Linear system could not be solved at the working precision.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, std::string condition)
      : Error(what), condition_(std::move(condition)) {}
  /// Printed condition diagnostic ("inf" when a pivot vanished exactly).
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// A ratio window whose extrapolated limit is not positive.
class NoFiniteRadiusError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace zseries
