#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perron {

/// Operand shapes do not conform (vector length vs tensor dim, matrix sizes).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a domain requirement: negative tensor entry, nonpositive
/// start vector, zero tensor where a scale is needed.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t pivot, double value)
      : std::runtime_error("singular matrix at pivot " + std::to_string(pivot)),
        pivot_(pivot),
        value_(value) {}

  std::size_t pivot() const noexcept { return pivot_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

/// A power iterate produced a zero component; the tensor has a zero slice or
/// is reducible.
class DegenerateIterateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace perron
