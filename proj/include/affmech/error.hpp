#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affmech {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand spaces or vector lengths do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Expression parse failure or evaluation outside the domain of an operator.
/// `position()` is the 0-based column in the source text, or -1 when the
/// failing node was built programmatically.
class ExpressionError : public Error {
 public:
  ExpressionError(const std::string& what, int position)
      : Error(position >= 0 ? what + " at column " + std::to_string(position) : what),
        position_(position) {}
  int position() const noexcept { return position_; }

 private:
  int position_;
};

/// Object tagged with one gauge was handed to an operation expecting another.
class GaugeMismatch : public Error {
 public:
  using Error::Error;
};

/// A point violates a constraint set. `constraint()` names the set.
class ConstraintError : public Error {
 public:
  ConstraintError(const std::string& constraint, const std::string& what)
      : Error("constraint " + constraint + ": " + what), constraint_(constraint) {}
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// Malformed input document. `location()` is a JSON pointer into it.
class FormatError : public Error {
 public:
  FormatError(const std::string& location, const std::string& what)
      : Error((location.empty() ? std::string("document") : location) + ": " + what), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(std::size_t step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace affmech
