#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsaug {

/// Bad argument values (unknown method, empty input, wrong sizes).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Channel-count or dimensionality mismatch.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the domain of a function (e.g. spline query outside the knot span).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A method-level constraint cannot be met (window too short, infeasible forced point, ...).
class ConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input file (empty file, no series).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unparseable token in an input file; carries the 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace tsaug
