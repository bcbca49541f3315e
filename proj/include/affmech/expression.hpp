#pragma once

// Scalar fields over a coordinate chart, written in a small expression
// language and differentiated exactly (forward mode, second order).
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'x' digits | func '(' expr ')' | '(' expr ')'
//   func    := sqrt | sin | cos | exp | log
//
// `-x0^2` parses as `-(x0^2)`.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "affmech/error.hpp"

namespace affmech {

struct FieldDerivs {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

struct FieldGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

namespace detail {
struct Node;
}

class ScalarField {
 public:
  /// The zero field.
  ScalarField();

  static ScalarField parse(std::string_view text);
  static ScalarField constant(double c);
  static ScalarField variable(int index);

  /// Number of leading variables the field may depend on (1 + highest index, 0
  /// for constants).
  int arity() const;

  double value(const Eigen::VectorXd& x) const;
  FieldGradient gradient(const Eigen::VectorXd& x) const;
  FieldDerivs derivs(const Eigen::VectorXd& x) const;

  /// Symbolic partial derivative with respect to variable `var`.
  ScalarField derivative(int var) const;
  /// Renames x_i to x_{i+offset}.
  ScalarField shifted(int offset) const;
  /// Replaces x_i by replacement[i]; variables past the end are left alone.
  ScalarField substitute(const std::vector<ScalarField>& replacement) const;

  std::optional<double> constant_value() const;
  bool is_zero() const;

  /// Canonical text; parses back to an equivalent field.
  std::string to_string() const;

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a);
  friend ScalarField pow(const ScalarField& a, const ScalarField& b);
  friend ScalarField sqrt(const ScalarField& a);
  friend ScalarField sin(const ScalarField& a);
  friend ScalarField cos(const ScalarField& a);
  friend ScalarField exp(const ScalarField& a);
  friend ScalarField log(const ScalarField& a);

 private:
  explicit ScalarField(std::shared_ptr<const detail::Node> root);
  std::shared_ptr<const detail::Node> root_;
};

inline ScalarField operator+(const ScalarField& a, double b) { return a + ScalarField::constant(b); }
inline ScalarField operator*(double a, const ScalarField& b) { return ScalarField::constant(a) * b; }

/// Sum_i a_i * b_i.
ScalarField dot(const std::vector<ScalarField>& a, const std::vector<ScalarField>& b);

}  // namespace affmech
