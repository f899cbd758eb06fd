#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "posgeo/jet.hpp"

namespace posgeo {

/// Node of an immersion component expression tree. Trees are plain values;
/// copying copies the subtree.
struct ExprNode {
  enum class Kind {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sin,
    Cos,
    Exp,
    Sqrt,
    Constant,
    Variable,   // chart coordinate u1..un (payload: 0-based index)
    Parameter,  // named parameter; must be substituted before evaluation
  };

  Kind kind = Kind::Constant;
  std::vector<ExprNode> children;
  double number = 0.0;     // Constant payload
  int var_index = -1;      // Variable payload
  std::string name;        // Parameter payload

  bool operator==(const ExprNode& other) const;
};

int arity(ExprNode::Kind kind);

/// Evaluate over plain doubles. Throws EvalError on division by zero,
/// sqrt of a negative, or a fractional power of a non-positive base;
/// a surviving Parameter node raises UnknownIdentifier.
double evaluate(const ExprNode& e, const std::vector<double>& u);

/// Evaluate over jets; `u` holds one seed jet per chart variable.
Jet evaluate(const ExprNode& e, const std::vector<Jet>& u);

/// Replace every Parameter node by a Constant from `params`. Unbound
/// parameters raise UnknownIdentifier.
ExprNode substitute(const ExprNode& e, const std::map<std::string, double>& params);

/// Render with minimal parentheses; numeric literals keep full precision, so
/// parsing the output reproduces the tree exactly.
std::string to_string(const ExprNode& e);

}  // namespace posgeo
