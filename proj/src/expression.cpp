#include "affmech/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

namespace affmech {
namespace detail {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Sin, Cos, Exp, Log };

struct Node {
  Op op = Op::Const;
  double value = 0.0;
  int index = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  int pos = -1;
};

using NodePtr = std::shared_ptr<const Node>;

}  // namespace detail

namespace {

using detail::Node;
using detail::NodePtr;
using detail::Op;

NodePtr make_const(double c, int pos = -1) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  n->pos = pos;
  return n;
}

NodePtr make_var(int index, int pos = -1) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  n->pos = pos;
  return n;
}

NodePtr make_raw(Op op, NodePtr a, NodePtr b = nullptr, int pos = -1) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->pos = pos;
  return n;
}

bool is_const(const NodePtr& n, double c) { return n->op == Op::Const && n->value == c; }
bool is_const(const NodePtr& n) { return n->op == Op::Const; }

// Folding constructors. Out-of-domain constants are left unfolded so the error
// surfaces at evaluation time with a location.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value + b->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_raw(Op::Add, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
  if (is_const(a)) return make_const(-a->value);
  if (a->op == Op::Neg) return a->a;
  return make_raw(Op::Neg, std::move(a));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value - b->value);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b));
  return make_raw(Op::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value * b->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return neg(std::move(b));
  if (is_const(b, -1.0)) return neg(std::move(a));
  return make_raw(Op::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b) && b->value != 0.0) return make_const(a->value / b->value);
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return make_const(0.0);
  if (is_const(b, 1.0)) return a;
  return make_raw(Op::Div, std::move(a), std::move(b));
}

NodePtr power(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return make_const(1.0);
  if (is_const(b, 1.0)) return a;
  if (is_const(a) && is_const(b)) {
    const double r = std::pow(a->value, b->value);
    if (std::isfinite(r)) return make_const(r);
  }
  return make_raw(Op::Pow, std::move(a), std::move(b));
}

NodePtr unary(Op op, NodePtr a) {
  if (is_const(a)) {
    const double u = a->value;
    switch (op) {
      case Op::Sqrt:
        if (u >= 0.0) return make_const(std::sqrt(u));
        break;
      case Op::Sin:
        return make_const(std::sin(u));
      case Op::Cos:
        return make_const(std::cos(u));
      case Op::Exp:
        return make_const(std::exp(u));
      case Op::Log:
        if (u > 0.0) return make_const(std::log(u));
        break;
      default:
        break;
    }
  }
  return make_raw(op, std::move(a));
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_ws();
    if (at_end()) throw ExpressionError("empty expression", 0);
    NodePtr e = parse_expr();
    skip_ws();
    if (!at_end()) throw ExpressionError(std::string("unexpected '") + text_[pos_] + "'", int(pos_));
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      const int at = int(pos_++);
      NodePtr rhs = parse_term();
      lhs = make_raw(c == '+' ? Op::Add : Op::Sub, lhs, rhs, at);
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      const int at = int(pos_++);
      NodePtr rhs = parse_unary();
      lhs = make_raw(c == '*' ? Op::Mul : Op::Div, lhs, rhs, at);
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (peek() == '-') {
      const int at = int(pos_++);
      return make_raw(Op::Neg, parse_unary(), nullptr, at);
    }
    if (peek() == '+') {
      ++pos_;
      return parse_unary();
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_ws();
    if (peek() == '^') {
      const int at = int(pos_++);
      NodePtr exponent = parse_unary();
      return make_raw(Op::Pow, base, exponent, at);
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (at_end()) throw ExpressionError("unexpected end of expression", int(pos_));
    const char c = peek();
    const int at = int(pos_);
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      if (word.size() >= 2 && word[0] == 'x' &&
          word.find_first_not_of("0123456789", 1) == std::string_view::npos) {
        pos_ = end;
        return make_var(std::atoi(std::string(word.substr(1)).c_str()), at);
      }
      Op op;
      if (word == "sqrt") op = Op::Sqrt;
      else if (word == "sin") op = Op::Sin;
      else if (word == "cos") op = Op::Cos;
      else if (word == "exp") op = Op::Exp;
      else if (word == "log") op = Op::Log;
      else throw ExpressionError("unknown identifier '" + std::string(word) + "'", at);
      pos_ = end;
      skip_ws();
      expect('(');
      NodePtr arg = parse_expr();
      expect(')');
      return make_raw(op, arg, nullptr, at);
    }
    throw ExpressionError(std::string("unexpected '") + c + "'", at);
  }

  NodePtr parse_number() {
    const int at = int(pos_);
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) throw ExpressionError("malformed number", at);
    pos_ += std::size_t(end - rest.c_str());
    return make_const(v, at);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      if (at_end()) throw ExpressionError(std::string("expected '") + c + "' before end of expression", int(pos_));
      throw ExpressionError(std::string("expected '") + c + "'", int(pos_));
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Forward-mode evaluation. Order 0: value, 1: + gradient, 2: + Hessian.

struct Jet {
  double v = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;
};

template <int Order>
class Evaluator {
 public:
  explicit Evaluator(const Eigen::VectorXd& x) : x_(x), n_(int(x.size())) {}

  Jet eval(const Node& n) const {
    switch (n.op) {
      case Op::Const: {
        Jet j = zero();
        j.v = n.value;
        return j;
      }
      case Op::Var: {
        if (n.index >= n_) {
          throw DimensionError("variable x" + std::to_string(n.index) + " outside a point of dimension " +
                               std::to_string(n_));
        }
        Jet j = zero();
        j.v = x_[n.index];
        if constexpr (Order >= 1) j.g[n.index] = 1.0;
        return j;
      }
      case Op::Add: {
        Jet a = eval(*n.a);
        const Jet b = eval(*n.b);
        a.v += b.v;
        if constexpr (Order >= 1) a.g += b.g;
        if constexpr (Order >= 2) a.h += b.h;
        return a;
      }
      case Op::Sub: {
        Jet a = eval(*n.a);
        const Jet b = eval(*n.b);
        a.v -= b.v;
        if constexpr (Order >= 1) a.g -= b.g;
        if constexpr (Order >= 2) a.h -= b.h;
        return a;
      }
      case Op::Neg: {
        Jet a = eval(*n.a);
        a.v = -a.v;
        if constexpr (Order >= 1) a.g = -a.g;
        if constexpr (Order >= 2) a.h = -a.h;
        return a;
      }
      case Op::Mul:
        return product(eval(*n.a), eval(*n.b));
      case Op::Div: {
        const Jet b = eval(*n.b);
        if (b.v == 0.0) throw ExpressionError("division by zero", n.pos);
        const double r = 1.0 / b.v;
        return product(eval(*n.a), chain(b, r, -r * r, 2.0 * r * r * r));
      }
      case Op::Pow:
        return pow_jet(n);
      case Op::Sqrt: {
        const Jet a = eval(*n.a);
        if (a.v < 0.0) throw ExpressionError("sqrt of negative value", n.pos);
        const double s = std::sqrt(a.v);
        if constexpr (Order == 0) {
          return chain(a, s, 0.0, 0.0);
        } else {
          if (s == 0.0) throw ExpressionError("sqrt is not differentiable at 0", n.pos);
          return chain(a, s, 0.5 / s, -0.25 / (s * s * s));
        }
      }
      case Op::Sin: {
        const Jet a = eval(*n.a);
        const double s = std::sin(a.v), c = std::cos(a.v);
        return chain(a, s, c, -s);
      }
      case Op::Cos: {
        const Jet a = eval(*n.a);
        const double s = std::sin(a.v), c = std::cos(a.v);
        return chain(a, c, -s, -c);
      }
      case Op::Exp: {
        const Jet a = eval(*n.a);
        const double e = std::exp(a.v);
        return chain(a, e, e, e);
      }
      case Op::Log: {
        const Jet a = eval(*n.a);
        if (a.v <= 0.0) throw ExpressionError("log of non-positive value", n.pos);
        return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
      }
    }
    throw ExpressionError("corrupt expression node", n.pos);
  }

 private:
  Jet zero() const {
    Jet j;
    if constexpr (Order >= 1) j.g = Eigen::VectorXd::Zero(n_);
    if constexpr (Order >= 2) j.h = Eigen::MatrixXd::Zero(n_, n_);
    return j;
  }

  // f(u) with f(u.v) = f0, f' = f1, f'' = f2.
  static Jet chain(const Jet& u, double f0, double f1, double f2) {
    Jet r;
    r.v = f0;
    if constexpr (Order >= 1) r.g = f1 * u.g;
    if constexpr (Order >= 2) r.h = f1 * u.h + f2 * (u.g * u.g.transpose());
    return r;
  }

  static Jet product(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v * b.v;
    if constexpr (Order >= 1) r.g = b.v * a.g + a.v * b.g;
    if constexpr (Order >= 2) {
      const Eigen::MatrixXd cross = a.g * b.g.transpose();
      r.h = b.v * a.h + a.v * b.h + cross + cross.transpose();
    }
    return r;
  }

  Jet pow_jet(const Node& n) const {
    const Jet a = eval(*n.a);
    if (n.b->op == Op::Const) {
      const double c = n.b->value;
      const bool integral = std::floor(c) == c;
      if (a.v < 0.0 && !integral) throw ExpressionError("non-integer power of negative value", n.pos);
      if (a.v == 0.0) {
        if (c < 0.0) throw ExpressionError("negative power of zero", n.pos);
        if (!integral && ((Order >= 1 && c < 1.0) || (Order >= 2 && c < 2.0))) {
          throw ExpressionError("power is not differentiable at 0", n.pos);
        }
      }
      const double f0 = std::pow(a.v, c);
      const double f1 = Order >= 1 ? c * std::pow(a.v, c - 1.0) : 0.0;
      const double f2 = Order >= 2 ? c * (c - 1.0) * std::pow(a.v, c - 2.0) : 0.0;
      return chain(a, f0, f1, f2);
    }
    if (a.v <= 0.0) throw ExpressionError("variable exponent needs a positive base", n.pos);
    const Jet b = eval(*n.b);
    const Jet log_a = chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
    const Jet e = product(b, log_a);
    const double ev = std::exp(e.v);
    return chain(e, ev, ev, ev);
  }

  const Eigen::VectorXd& x_;
  int n_;
};

// ---------------------------------------------------------------------------

int arity_of(const Node& n) {
  if (n.op == Op::Var) return n.index + 1;
  int r = 0;
  if (n.a) r = std::max(r, arity_of(*n.a));
  if (n.b) r = std::max(r, arity_of(*n.b));
  return r;
}

NodePtr differentiate(const NodePtr& n, int var) {
  switch (n->op) {
    case Op::Const:
      return make_const(0.0);
    case Op::Var:
      return make_const(n->index == var ? 1.0 : 0.0);
    case Op::Add:
      return add(differentiate(n->a, var), differentiate(n->b, var));
    case Op::Sub:
      return sub(differentiate(n->a, var), differentiate(n->b, var));
    case Op::Neg:
      return neg(differentiate(n->a, var));
    case Op::Mul:
      return add(mul(differentiate(n->a, var), n->b), mul(n->a, differentiate(n->b, var)));
    case Op::Div: {
      const NodePtr da = differentiate(n->a, var);
      const NodePtr db = differentiate(n->b, var);
      return sub(div(da, n->b), div(mul(n->a, db), mul(n->b, n->b)));
    }
    case Op::Pow: {
      const NodePtr da = differentiate(n->a, var);
      if (n->b->op == Op::Const) {
        const double c = n->b->value;
        return mul(mul(make_const(c), power(n->a, make_const(c - 1.0))), da);
      }
      const NodePtr db = differentiate(n->b, var);
      const NodePtr inner = add(mul(db, unary(Op::Log, n->a)), div(mul(n->b, da), n->a));
      return mul(n, inner);
    }
    case Op::Sqrt:
      return div(differentiate(n->a, var), mul(make_const(2.0), n));
    case Op::Sin:
      return mul(unary(Op::Cos, n->a), differentiate(n->a, var));
    case Op::Cos:
      return neg(mul(unary(Op::Sin, n->a), differentiate(n->a, var)));
    case Op::Exp:
      return mul(n, differentiate(n->a, var));
    case Op::Log:
      return div(differentiate(n->a, var), n->a);
  }
  return make_const(0.0);
}

NodePtr rebuild(const NodePtr& n, const std::function<NodePtr(const Node&)>& on_var) {
  switch (n->op) {
    case Op::Const:
      return n;
    case Op::Var:
      return on_var(*n);
    case Op::Add:
      return add(rebuild(n->a, on_var), rebuild(n->b, on_var));
    case Op::Sub:
      return sub(rebuild(n->a, on_var), rebuild(n->b, on_var));
    case Op::Mul:
      return mul(rebuild(n->a, on_var), rebuild(n->b, on_var));
    case Op::Div:
      return div(rebuild(n->a, on_var), rebuild(n->b, on_var));
    case Op::Pow:
      return power(rebuild(n->a, on_var), rebuild(n->b, on_var));
    case Op::Neg:
      return neg(rebuild(n->a, on_var));
    default:
      return unary(n->op, rebuild(n->a, on_var));
  }
}

int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    case Op::Const:
      return n.value < 0.0 ? 3 : 5;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print(const Node& n);

std::string wrap(const Node& child, int min_prec) {
  const std::string s = print(child);
  return precedence(child) < min_prec ? "(" + s + ")" : s;
}

std::string print(const Node& n) {
  switch (n.op) {
    case Op::Const:
      return format_number(n.value);
    case Op::Var:
      return "x" + std::to_string(n.index);
    case Op::Add:
      return wrap(*n.a, 1) + " + " + wrap(*n.b, 2);
    case Op::Sub:
      return wrap(*n.a, 1) + " - " + wrap(*n.b, 2);
    case Op::Mul:
      return wrap(*n.a, 2) + "*" + wrap(*n.b, 3);
    case Op::Div:
      return wrap(*n.a, 2) + "/" + wrap(*n.b, 3);
    case Op::Neg:
      return "-" + wrap(*n.a, 3);
    case Op::Pow:
      return wrap(*n.a, 5) + "^" + wrap(*n.b, 3);
    case Op::Sqrt:
      return "sqrt(" + print(*n.a) + ")";
    case Op::Sin:
      return "sin(" + print(*n.a) + ")";
    case Op::Cos:
      return "cos(" + print(*n.a) + ")";
    case Op::Exp:
      return "exp(" + print(*n.a) + ")";
    case Op::Log:
      return "log(" + print(*n.a) + ")";
  }
  return "?";
}

void check_point(const Eigen::VectorXd& x, int arity) {
  if (x.size() < arity) {
    throw DimensionError("field needs " + std::to_string(arity) + " coordinates, got " + std::to_string(x.size()));
  }
}

}  // namespace

ScalarField::ScalarField() : root_(make_const(0.0)) {}
ScalarField::ScalarField(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}

ScalarField ScalarField::parse(std::string_view text) { return ScalarField(Parser(text).parse()); }
ScalarField ScalarField::constant(double c) { return ScalarField(make_const(c)); }
ScalarField ScalarField::variable(int index) {
  if (index < 0) throw DimensionError("negative variable index");
  return ScalarField(make_var(index));
}

int ScalarField::arity() const { return arity_of(*root_); }

double ScalarField::value(const Eigen::VectorXd& x) const {
  check_point(x, arity());
  return Evaluator<0>(x).eval(*root_).v;
}

FieldGradient ScalarField::gradient(const Eigen::VectorXd& x) const {
  check_point(x, arity());
  Jet j = Evaluator<1>(x).eval(*root_);
  return {j.v, std::move(j.g)};
}

FieldDerivs ScalarField::derivs(const Eigen::VectorXd& x) const {
  check_point(x, arity());
  Jet j = Evaluator<2>(x).eval(*root_);
  return {j.v, std::move(j.g), std::move(j.h)};
}

ScalarField ScalarField::derivative(int var) const { return ScalarField(differentiate(root_, var)); }

ScalarField ScalarField::shifted(int offset) const {
  return ScalarField(rebuild(root_, [offset](const Node& v) {
    if (v.index + offset < 0) throw DimensionError("shift moves a variable below x0");
    return make_var(v.index + offset);
  }));
}

ScalarField ScalarField::substitute(const std::vector<ScalarField>& replacement) const {
  return ScalarField(rebuild(root_, [&replacement](const Node& v) -> NodePtr {
    if (v.index < int(replacement.size())) return replacement[std::size_t(v.index)].root_;
    return make_var(v.index);
  }));
}

std::optional<double> ScalarField::constant_value() const {
  if (root_->op == Op::Const) return root_->value;
  return std::nullopt;
}

bool ScalarField::is_zero() const { return is_const(root_, 0.0); }

std::string ScalarField::to_string() const { return print(*root_); }

ScalarField operator+(const ScalarField& a, const ScalarField& b) { return ScalarField(add(a.root_, b.root_)); }
ScalarField operator-(const ScalarField& a, const ScalarField& b) { return ScalarField(sub(a.root_, b.root_)); }
ScalarField operator*(const ScalarField& a, const ScalarField& b) { return ScalarField(mul(a.root_, b.root_)); }
ScalarField operator/(const ScalarField& a, const ScalarField& b) { return ScalarField(div(a.root_, b.root_)); }
ScalarField operator-(const ScalarField& a) { return ScalarField(neg(a.root_)); }
ScalarField pow(const ScalarField& a, const ScalarField& b) { return ScalarField(power(a.root_, b.root_)); }
ScalarField sqrt(const ScalarField& a) { return ScalarField(unary(Op::Sqrt, a.root_)); }
ScalarField sin(const ScalarField& a) { return ScalarField(unary(Op::Sin, a.root_)); }
ScalarField cos(const ScalarField& a) { return ScalarField(unary(Op::Cos, a.root_)); }
ScalarField exp(const ScalarField& a) { return ScalarField(unary(Op::Exp, a.root_)); }
ScalarField log(const ScalarField& a) { return ScalarField(unary(Op::Log, a.root_)); }

ScalarField dot(const std::vector<ScalarField>& a, const std::vector<ScalarField>& b) {
  if (a.size() != b.size()) throw DimensionError("dot of fields with different lengths");
  ScalarField sum;
  for (std::size_t i = 0; i < a.size(); ++i) sum = sum + a[i] * b[i];
  return sum;
}

}  // namespace affmech
