#pragma once

#include <map>
#include <string>
#include <vector>

#include "posgeo/expr.hpp"

namespace posgeo {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  bool operator==(const Interval&) const = default;
};

/// Parsed definition of an immersion x: U ⊆ R^n → E^m together with its
/// domain box and per-axis sample counts.
struct ImmersionSpec {
  int n = 0;  // intrinsic dimension
  int m = 0;  // ambient dimension
  std::vector<ExprNode> components;       // size m, closed over u1..un
  std::map<std::string, double> params;   // substituted values, kept for echo
  std::vector<Interval> domain;           // size n
  std::vector<int> grid;                  // size n, counts >= 2
  std::string label;                      // catalog name or file stem

  bool operator==(const ImmersionSpec& other) const {
    return n == other.n && m == other.m && components == other.components &&
           domain == other.domain && grid == other.grid;
  }
};

/// Ambient position and partial derivatives up to `order` at one chart point.
/// Tensors for orders that were not requested are sized but filled with NaN.
struct JetPoint {
  int n = 0;
  int m = 0;
  int order = 0;
  std::vector<double> u;   // n
  std::vector<double> f;   // m
  std::vector<double> d1;  // m*n
  std::vector<double> d2;  // m*n*n, symmetric in the chart indices
  std::vector<double> d3;  // m*n*n*n, fully symmetric in the chart indices

  double d1_at(int k, int i) const { return d1[k * n + i]; }
  double d2_at(int k, int i, int j) const { return d2[(k * n + i) * n + j]; }
  double d3_at(int k, int i, int j, int l) const {
    return d3[((k * n + i) * n + j) * n + l];
  }
  bool has_order(int q) const { return order >= q; }
};

/// Parse DSL source into a spec. Named parameters are substituted from
/// `params` (or from `param NAME = value;` statements in the source) at parse
/// time, so the resulting trees are closed over the chart variables.
///
/// Grammar (whitespace-insensitive):
///   spec     :=  "dim" INT "->" INT ";" stmt+
///   stmt     :=  (assign | paramDecl | domainDecl | gridDecl) ";"
///   assign   :=  "x" INT "=" expr
///   paramDecl  := "param" IDENT "=" signedNumber
///   domainDecl := "domain" "=" "[" num "," num "]" ("," "[" num "," num "]")*
///   gridDecl   := "grid" "=" INT ("," INT)*
///   expr     :=  precedence grammar over + - * / ^, unary -, calls of
///                sin/cos/exp/sqrt, parentheses, decimal literals with
///                optional exponent, identifiers u1..un or parameters.
/// Unspecified domain defaults to [-1,1]^n; unspecified grid to 8 per axis.
ImmersionSpec parse(const std::string& source,
                    const std::map<std::string, double>& params = {});

/// Canonical DSL text; parse(print_spec(s)) reproduces the spec exactly.
std::string print_spec(const ImmersionSpec& spec);

/// Evaluate the immersion as an exact jet of the requested order (1..3) at
/// the chart point `u`, which must lie inside the domain box.
JetPoint eval_jet(const ImmersionSpec& spec, const std::vector<double>& u,
                  int order);

/// Position only (no derivatives); used by point-cloud diagnostics.
std::vector<double> eval_position(const ImmersionSpec& spec,
                                  const std::vector<double>& u);

}  // namespace posgeo
