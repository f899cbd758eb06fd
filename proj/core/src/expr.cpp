#include "posgeo/expr.hpp"

#include <cmath>
#include <cstdio>

#include "posgeo/errors.hpp"

namespace posgeo {

bool ExprNode::operator==(const ExprNode& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Constant:
      // bit-for-bit: round-trip identity is part of the printer contract
      return number == other.number;
    case Kind::Variable:
      return var_index == other.var_index;
    case Kind::Parameter:
      return name == other.name;
    default:
      break;
  }
  return children == other.children;
}

int arity(ExprNode::Kind kind) {
  using K = ExprNode::Kind;
  switch (kind) {
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div:
    case K::Pow:
      return 2;
    case K::Neg:
    case K::Sin:
    case K::Cos:
    case K::Exp:
    case K::Sqrt:
      return 1;
    default:
      return 0;
  }
}

namespace {

template <typename T>
T eval_impl(const ExprNode& e, const std::vector<T>& u);

double pow_checked(double base, double p) {
  const double rp = std::round(p);
  if (rp == p && std::abs(p) <= 64.0) {
    if (base == 0.0 && p < 0.0) throw EvalError("division by zero");
    return std::pow(base, p);
  }
  if (base <= 0.0)
    throw EvalError("pow of non-positive base with non-integer exponent");
  return std::pow(base, p);
}

double eval_pow(double base, const ExprNode& exponent,
                const std::vector<double>& u) {
  return pow_checked(base, eval_impl(exponent, u));
}

Jet eval_pow(const Jet& base, const ExprNode& exponent,
             const std::vector<Jet>& u) {
  // Constant exponents (the common case) keep integer powers exact for bases
  // of any sign; anything else needs exp(p*log(base)) with positive base.
  if (exponent.kind == ExprNode::Kind::Constant)
    return pow(base, exponent.number);
  const Jet p = eval_impl(exponent, u);
  return exp(p * log(base));
}

template <typename T>
T eval_impl(const ExprNode& e, const std::vector<T>& u) {
  using K = ExprNode::Kind;
  switch (e.kind) {
    case K::Add:
      return eval_impl(e.children[0], u) + eval_impl(e.children[1], u);
    case K::Sub:
      return eval_impl(e.children[0], u) - eval_impl(e.children[1], u);
    case K::Mul:
      return eval_impl(e.children[0], u) * eval_impl(e.children[1], u);
    case K::Div: {
      T num = eval_impl(e.children[0], u);
      T den = eval_impl(e.children[1], u);
      if constexpr (std::is_same_v<T, double>) {
        if (den == 0.0) throw EvalError("division by zero");
        return num / den;
      } else {
        return num / den;  // Jet division checks its own value
      }
    }
    case K::Pow:
      return eval_pow(eval_impl(e.children[0], u), e.children[1], u);
    case K::Neg:
      return -eval_impl(e.children[0], u);
    case K::Sin: {
      using std::sin;
      return sin(eval_impl(e.children[0], u));
    }
    case K::Cos: {
      using std::cos;
      return cos(eval_impl(e.children[0], u));
    }
    case K::Exp: {
      using std::exp;
      return exp(eval_impl(e.children[0], u));
    }
    case K::Sqrt: {
      T v = eval_impl(e.children[0], u);
      if constexpr (std::is_same_v<T, double>) {
        if (v < 0.0) throw EvalError("sqrt of negative value");
        return std::sqrt(v);
      } else {
        return sqrt(v);
      }
    }
    case K::Constant:
      if constexpr (std::is_same_v<T, double>) {
        return e.number;
      } else {
        return T(u.at(0).nvars(), u.at(0).order(), e.number);
      }
    case K::Variable:
      return u.at(e.var_index);
    case K::Parameter:
      throw UnknownIdentifier("unbound parameter '" + e.name + "'");
  }
  throw Error("corrupt expression node");
}

}  // namespace

double evaluate(const ExprNode& e, const std::vector<double>& u) {
  return eval_impl(e, u);
}

Jet evaluate(const ExprNode& e, const std::vector<Jet>& u) {
  return eval_impl(e, u);
}

ExprNode substitute(const ExprNode& e,
                    const std::map<std::string, double>& params) {
  if (e.kind == ExprNode::Kind::Parameter) {
    auto it = params.find(e.name);
    if (it == params.end())
      throw UnknownIdentifier("unbound parameter '" + e.name + "'");
    ExprNode c;
    c.kind = ExprNode::Kind::Constant;
    c.number = it->second;
    return c;
  }
  ExprNode r = e;
  for (auto& child : r.children) child = substitute(child, params);
  return r;
}

namespace {

// Printer precedence; higher binds tighter. Negative literals print with a
// leading '-' (the parser folds that back into the literal), so they carry
// the precedence of unary minus.
int precedence(const ExprNode& e) {
  using K = ExprNode::Kind;
  switch (e.kind) {
    case K::Add:
    case K::Sub:
      return 1;
    case K::Mul:
    case K::Div:
      return 2;
    case K::Neg:
      return 3;
    case K::Pow:
      return 4;
    case K::Constant:
      return std::signbit(e.number) ? 3 : 5;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_node(const ExprNode& e, std::string& out, int parent_prec) {
  using K = ExprNode::Kind;
  const int prec = precedence(e);
  const bool need_parens = prec < parent_prec;
  std::string inner;
  switch (e.kind) {
    case K::Add:
      print_node(e.children[0], inner, prec);
      inner += " + ";
      print_node(e.children[1], inner, prec + 1);
      break;
    case K::Sub:
      print_node(e.children[0], inner, prec);
      inner += " - ";
      print_node(e.children[1], inner, prec + 1);
      break;
    case K::Mul:
      print_node(e.children[0], inner, prec);
      inner += "*";
      print_node(e.children[1], inner, prec + 1);
      break;
    case K::Div:
      print_node(e.children[0], inner, prec);
      inner += "/";
      print_node(e.children[1], inner, prec + 1);
      break;
    case K::Pow:
      print_node(e.children[0], inner, prec + 1);
      inner += "^";
      print_node(e.children[1], inner, prec);
      break;
    case K::Neg:
      inner = "-";
      print_node(e.children[0], inner, prec);
      break;
    case K::Sin:
    case K::Cos:
    case K::Exp:
    case K::Sqrt: {
      const char* fn = e.kind == K::Sin   ? "sin"
                       : e.kind == K::Cos ? "cos"
                       : e.kind == K::Exp ? "exp"
                                          : "sqrt";
      inner = std::string(fn) + "(";
      print_node(e.children[0], inner, 0);
      inner += ")";
      break;
    }
    case K::Constant:
      inner = format_number(e.number);
      break;
    case K::Variable:
      inner = "u" + std::to_string(e.var_index + 1);
      break;
    case K::Parameter:
      inner = e.name;
      break;
  }
  if (need_parens)
    out += "(" + inner + ")";
  else
    out += inner;
}

}  // namespace

std::string to_string(const ExprNode& e) {
  std::string out;
  print_node(e, out, 0);
  return out;
}

}  // namespace posgeo
