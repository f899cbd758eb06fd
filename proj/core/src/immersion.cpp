#include "posgeo/immersion.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "posgeo/errors.hpp"

namespace posgeo {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  Number,
  Ident,
  Arrow,      // ->
  Semicolon,
  Equals,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      current_.text = "<end of input>";
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        bump();
      current_.kind = Tok::Ident;
      current_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      bump();
      bump();
      current_.kind = Tok::Arrow;
      current_.text = "->";
      return;
    }
    static const std::map<char, Tok> singles = {
        {';', Tok::Semicolon}, {'=', Tok::Equals}, {'+', Tok::Plus},
        {'-', Tok::Minus},     {'*', Tok::Star},   {'/', Tok::Slash},
        {'^', Tok::Caret},     {'(', Tok::LParen}, {')', Tok::RParen},
        {'[', Tok::LBracket},  {']', Tok::RBracket}, {',', Tok::Comma}};
    auto it = singles.find(c);
    if (it == singles.end())
      throw SyntaxError(std::string("unexpected character '") + c + "'", line_,
                        col_);
    bump();
    current_.kind = it->second;
    current_.text = std::string(1, c);
  }

  void lex_number() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      bump();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      bump();
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_;
      bump();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
        bump();
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          bump();
      } else {
        pos_ = mark;  // 'e' belongs to an identifier context; not valid here
      }
    }
    current_.kind = Tok::Number;
    current_.text = src_.substr(start, pos_ - start);
    if (current_.text == ".")
      throw SyntaxError("malformed number", current_.line, current_.column);
    current_.number = std::strtod(current_.text.c_str(), nullptr);
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {  // line comment
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(const std::string& src, const std::map<std::string, double>& params)
      : lexer_(src), params_(params) {}

  ImmersionSpec parse_spec() {
    expect_keyword("dim");
    spec_.n = expect_int("intrinsic dimension");
    expect(Tok::Arrow, "'->'");
    spec_.m = expect_int("ambient dimension");
    expect(Tok::Semicolon, "';'");
    if (!(1 <= spec_.n && spec_.n < spec_.m && spec_.m <= 8))
      throw DimensionMismatch("dimensions must satisfy 1 <= n < m <= 8, got " +
                              std::to_string(spec_.n) + " -> " +
                              std::to_string(spec_.m));

    components_.assign(spec_.m, std::nullopt);
    while (lexer_.peek().kind != Tok::End) parse_statement();

    for (int k = 0; k < spec_.m; ++k) {
      if (!components_[k])
        throw DimensionMismatch("component x" + std::to_string(k + 1) +
                                " is never assigned (declared m = " +
                                std::to_string(spec_.m) + ")");
      spec_.components.push_back(std::move(*components_[k]));
    }
    if (spec_.domain.empty())
      spec_.domain.assign(spec_.n, Interval{-1.0, 1.0});
    if (spec_.grid.empty()) spec_.grid.assign(spec_.n, 8);
    validate();
    spec_.params = params_;
    return std::move(spec_);
  }

 private:
  void parse_statement() {
    const Token t = lexer_.peek();
    if (t.kind != Tok::Ident)
      throw SyntaxError("expected a statement ('x<k> = ...', 'param', "
                        "'domain' or 'grid'), got '" + t.text + "'",
                        t.line, t.column);
    if (t.text == "param") {
      parse_param();
    } else if (t.text == "domain") {
      parse_domain();
    } else if (t.text == "grid") {
      parse_grid();
    } else {
      parse_assign();
    }
    expect(Tok::Semicolon, "';'");
  }

  void parse_param() {
    lexer_.take();
    const Token name = expect(Tok::Ident, "parameter name");
    expect(Tok::Equals, "'='");
    const double v = parse_signed_number();
    params_[name.text] = v;
  }

  void parse_domain() {
    lexer_.take();
    expect(Tok::Equals, "'='");
    spec_.domain.clear();
    do {
      expect(Tok::LBracket, "'['");
      Interval iv;
      iv.lo = parse_signed_number();
      expect(Tok::Comma, "','");
      iv.hi = parse_signed_number();
      expect(Tok::RBracket, "']'");
      spec_.domain.push_back(iv);
    } while (accept(Tok::Comma));
  }

  void parse_grid() {
    lexer_.take();
    expect(Tok::Equals, "'='");
    spec_.grid.clear();
    do {
      spec_.grid.push_back(expect_int("grid count"));
    } while (accept(Tok::Comma));
  }

  void parse_assign() {
    const Token target = expect(Tok::Ident, "component name");
    const int k = component_index(target);
    expect(Tok::Equals, "'='");
    ExprNode e = parse_expr();
    if (components_[k])
      throw DimensionMismatch("component " + target.text + " assigned twice");
    components_[k] = substitute(e, params_);
  }

  int component_index(const Token& t) {
    if (t.text.size() >= 2 && t.text[0] == 'x') {
      int k = parse_trailing_int(t.text);
      if (k >= 1 && k <= spec_.m) return k - 1;
      if (k >= 1)
        throw DimensionMismatch("component " + t.text +
                                " exceeds declared ambient dimension m = " +
                                std::to_string(spec_.m));
    }
    throw SyntaxError("expected component name x1..x" + std::to_string(spec_.m) +
                          ", got '" + t.text + "'",
                      t.line, t.column);
  }

  static int parse_trailing_int(const std::string& s) {
    for (size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
    return std::atoi(s.c_str() + 1);
  }

  double parse_signed_number() {
    double sign = 1.0;
    while (lexer_.peek().kind == Tok::Minus || lexer_.peek().kind == Tok::Plus) {
      if (lexer_.take().kind == Tok::Minus) sign = -sign;
    }
    const Token t = expect(Tok::Number, "number");
    return sign * t.number;
  }

  int expect_int(const char* what) {
    const Token t = expect(Tok::Number, what);
    const double r = std::round(t.number);
    if (r != t.number || t.text.find('.') != std::string::npos ||
        t.text.find('e') != std::string::npos ||
        t.text.find('E') != std::string::npos)
      throw SyntaxError(std::string("expected integer ") + what + ", got '" +
                            t.text + "'",
                        t.line, t.column);
    return static_cast<int>(r);
  }

  // expr := term (("+"|"-") term)*
  ExprNode parse_expr() {
    ExprNode lhs = parse_term();
    for (;;) {
      if (accept(Tok::Plus)) {
        lhs = binary(ExprNode::Kind::Add, std::move(lhs), parse_term());
      } else if (accept(Tok::Minus)) {
        lhs = binary(ExprNode::Kind::Sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  // term := unary (("*"|"/") unary)*
  ExprNode parse_term() {
    ExprNode lhs = parse_unary();
    for (;;) {
      if (accept(Tok::Star)) {
        lhs = binary(ExprNode::Kind::Mul, std::move(lhs), parse_unary());
      } else if (accept(Tok::Slash)) {
        lhs = binary(ExprNode::Kind::Div, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  // unary := "-" unary | power;  -literal folds into the literal
  ExprNode parse_unary() {
    if (accept(Tok::Minus)) {
      ExprNode inner = parse_unary();
      if (inner.kind == ExprNode::Kind::Constant) {
        inner.number = -inner.number;
        return inner;
      }
      ExprNode e;
      e.kind = ExprNode::Kind::Neg;
      e.children.push_back(std::move(inner));
      return e;
    }
    return parse_power();
  }

  // power := primary ("^" unary)?   (right-associative)
  ExprNode parse_power() {
    ExprNode base = parse_primary();
    if (accept(Tok::Caret))
      return binary(ExprNode::Kind::Pow, std::move(base), parse_unary());
    return base;
  }

  ExprNode parse_primary() {
    const Token t = lexer_.take();
    switch (t.kind) {
      case Tok::Number: {
        ExprNode e;
        e.kind = ExprNode::Kind::Constant;
        e.number = t.number;
        return e;
      }
      case Tok::LParen: {
        ExprNode e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident:
        return resolve_identifier(t);
      default:
        throw SyntaxError("expected a number, identifier or '(', got '" +
                              t.text + "'",
                          t.line, t.column);
    }
  }

  ExprNode resolve_identifier(const Token& t) {
    static const std::map<std::string, ExprNode::Kind> functions = {
        {"sin", ExprNode::Kind::Sin},
        {"cos", ExprNode::Kind::Cos},
        {"exp", ExprNode::Kind::Exp},
        {"sqrt", ExprNode::Kind::Sqrt}};
    auto fn = functions.find(t.text);
    if (fn != functions.end()) {
      expect(Tok::LParen, "'(' after function name");
      ExprNode e;
      e.kind = fn->second;
      e.children.push_back(parse_expr());
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.text[0] == 'u') {
      const int k = parse_trailing_int(t.text);
      if (k >= 1) {
        if (k > spec_.n)
          throw UnknownIdentifier("variable " + t.text +
                                  " exceeds intrinsic dimension n = " +
                                  std::to_string(spec_.n));
        ExprNode e;
        e.kind = ExprNode::Kind::Variable;
        e.var_index = k - 1;
        return e;
      }
    }
    if (params_.count(t.text)) {
      ExprNode e;
      e.kind = ExprNode::Kind::Parameter;
      e.name = t.text;
      return e;
    }
    throw UnknownIdentifier("unknown identifier '" + t.text + "' at " +
                            std::to_string(t.line) + ":" +
                            std::to_string(t.column));
  }

  static ExprNode binary(ExprNode::Kind k, ExprNode lhs, ExprNode rhs) {
    ExprNode e;
    e.kind = k;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  void expect_keyword(const std::string& kw) {
    const Token t = lexer_.take();
    if (t.kind != Tok::Ident || t.text != kw)
      throw SyntaxError("expected '" + kw + "', got '" + t.text + "'", t.line,
                        t.column);
  }

  Token expect(Tok kind, const char* what) {
    const Token t = lexer_.take();
    if (t.kind != kind)
      throw SyntaxError(std::string("expected ") + what + ", got '" + t.text +
                            "'",
                        t.line, t.column);
    return t;
  }

  bool accept(Tok kind) {
    if (lexer_.peek().kind != kind) return false;
    lexer_.take();
    return true;
  }

  void validate() {
    if (static_cast<int>(spec_.domain.size()) != spec_.n)
      throw DimensionMismatch("domain has " +
                              std::to_string(spec_.domain.size()) +
                              " intervals, expected n = " +
                              std::to_string(spec_.n));
    if (static_cast<int>(spec_.grid.size()) != spec_.n)
      throw DimensionMismatch("grid has " + std::to_string(spec_.grid.size()) +
                              " counts, expected n = " +
                              std::to_string(spec_.n));
    for (const Interval& iv : spec_.domain)
      if (!(iv.lo < iv.hi))
        throw DimensionMismatch("domain interval requires lower < upper");
    for (int c : spec_.grid)
      if (c < 2) throw DimensionMismatch("grid counts must be >= 2");
  }

  Lexer lexer_;
  std::map<std::string, double> params_;
  ImmersionSpec spec_;
  std::vector<std::optional<ExprNode>> components_;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ImmersionSpec parse(const std::string& source,
                    const std::map<std::string, double>& params) {
  return Parser(source, params).parse_spec();
}

std::string print_spec(const ImmersionSpec& spec) {
  std::ostringstream out;
  out << "dim " << spec.n << " -> " << spec.m << ";\n";
  for (int k = 0; k < spec.m; ++k)
    out << "x" << (k + 1) << " = " << to_string(spec.components[k]) << ";\n";
  out << "domain = ";
  for (int i = 0; i < spec.n; ++i) {
    if (i) out << ", ";
    out << "[" << format_number(spec.domain[i].lo) << ", "
        << format_number(spec.domain[i].hi) << "]";
  }
  out << ";\n";
  out << "grid = ";
  for (int i = 0; i < spec.n; ++i) {
    if (i) out << ", ";
    out << spec.grid[i];
  }
  out << ";\n";
  return out.str();
}

JetPoint eval_jet(const ImmersionSpec& spec, const std::vector<double>& u,
                  int order) {
  if (order < 1 || order > 3)
    throw OrderTooLow("jet order must be 1, 2 or 3");
  if (static_cast<int>(u.size()) != spec.n)
    throw DomainError("chart point has wrong dimension");
  for (int i = 0; i < spec.n; ++i)
    if (!(u[i] >= spec.domain[i].lo && u[i] <= spec.domain[i].hi))
      throw DomainError("chart point lies outside the domain box (axis " +
                        std::to_string(i + 1) + ")");

  const int n = spec.n, m = spec.m;
  JetPoint p;
  p.n = n;
  p.m = m;
  p.order = order;
  p.u = u;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  p.f.assign(m, nan);
  p.d1.assign(static_cast<size_t>(m) * n, nan);
  p.d2.assign(static_cast<size_t>(m) * n * n, nan);
  p.d3.assign(static_cast<size_t>(m) * n * n * n, nan);

  std::vector<Jet> seeds;
  seeds.reserve(n);
  for (int i = 0; i < n; ++i) seeds.push_back(Jet::variable(n, order, i, u[i]));

  for (int k = 0; k < m; ++k) {
    const Jet jk = evaluate(spec.components[k], seeds);
    p.f[k] = jk.value();
    for (int i = 0; i < n; ++i) p.d1[k * n + i] = jk.d1(i);
    if (order >= 2)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p.d2[(k * n + i) * n + j] = jk.d2(i, j);
    if (order >= 3)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            p.d3[((k * n + i) * n + j) * n + l] = jk.d3(i, j, l);
  }
  return p;
}

std::vector<double> eval_position(const ImmersionSpec& spec,
                                  const std::vector<double>& u) {
  std::vector<double> x(spec.m);
  for (int k = 0; k < spec.m; ++k) x[k] = evaluate(spec.components[k], u);
  return x;
}

}  // namespace posgeo
