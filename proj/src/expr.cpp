#include "pgeom/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "pgeom/normform.hpp"

namespace pgeom {

ExprPtr make_const(Rational v) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Const;
  n->value = v;
  return n;
}

ExprPtr make_coord(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Coord;
  n->coord = std::move(name);
  return n;
}

ExprPtr make_node(ExprNode::Op op, ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

ExprPtr make_pow(ExprPtr base, int exponent) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Pow;
  n->a = std::move(base);
  n->exponent = exponent;
  return n;
}

// ---------------------------------------------------------------- printing

namespace {

// Precedence levels: sum 1, product 2, unary minus 3, power 4, atom 5.
int precedence(const ExprNode& n) {
  using Op = ExprNode::Op;
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
      return n.value < Rational(0) ? 3 : 5;
    default:
      return 5;
  }
}

void print_rec(std::ostream& os, const ExprNode& n, int parent_prec) {
  using Op = ExprNode::Op;
  int prec = precedence(n);
  bool paren = prec < parent_prec;
  if (paren) os << '(';
  switch (n.op) {
    case Op::Const:
      os << n.value.str();
      break;
    case Op::Coord:
      os << n.coord;
      break;
    case Op::Add:
      print_rec(os, *n.a, 1);
      os << " + ";
      print_rec(os, *n.b, 2);
      break;
    case Op::Sub:
      print_rec(os, *n.a, 1);
      os << " - ";
      print_rec(os, *n.b, 2);
      break;
    case Op::Mul:
      print_rec(os, *n.a, 2);
      os << "*";
      print_rec(os, *n.b, 3);
      break;
    case Op::Div:
      print_rec(os, *n.a, 2);
      os << "/";
      print_rec(os, *n.b, 3);
      break;
    case Op::Neg:
      os << "-";
      print_rec(os, *n.a, 4);
      break;
    case Op::Pow:
      print_rec(os, *n.a, 5);
      os << "^" << n.exponent;
      break;
    case Op::Exp:
      os << "exp(";
      print_rec(os, *n.a, 0);
      os << ")";
      break;
    case Op::Log:
      os << "log(";
      print_rec(os, *n.a, 0);
      os << ")";
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(os, *e, 0);
  return os.str();
}

// -------------------------------------------------------------- evaluation

double evaluate_expr(const ExprPtr& e, const Chart& chart,
                     const std::vector<double>& point) {
  using Op = ExprNode::Op;
  switch (e->op) {
    case Op::Const:
      return e->value.to_double();
    case Op::Coord: {
      int i = chart.index_of(e->coord);
      if (i < 0) throw UnknownIdentifier(0, e->coord);
      return point[static_cast<std::size_t>(i)];
    }
    case Op::Add:
      return evaluate_expr(e->a, chart, point) + evaluate_expr(e->b, chart, point);
    case Op::Sub:
      return evaluate_expr(e->a, chart, point) - evaluate_expr(e->b, chart, point);
    case Op::Mul:
      return evaluate_expr(e->a, chart, point) * evaluate_expr(e->b, chart, point);
    case Op::Div: {
      double d = evaluate_expr(e->b, chart, point);
      if (d == 0.0) throw SingularityError(print_expr(e));
      return evaluate_expr(e->a, chart, point) / d;
    }
    case Op::Neg:
      return -evaluate_expr(e->a, chart, point);
    case Op::Pow: {
      double b = evaluate_expr(e->a, chart, point);
      if (b == 0.0 && e->exponent < 0) throw SingularityError(print_expr(e));
      return std::pow(b, e->exponent);
    }
    case Op::Exp:
      return std::exp(evaluate_expr(e->a, chart, point));
    case Op::Log: {
      double v = evaluate_expr(e->a, chart, point);
      if (v <= 0.0) throw SingularityError(print_expr(e));
      return std::log(v);
    }
  }
  throw std::logic_error("evaluate: bad op");
}

// ---------------------------------------------------------- differentiation

ExprPtr differentiate_expr(const ExprPtr& e, const std::string& coord) {
  using Op = ExprNode::Op;
  switch (e->op) {
    case Op::Const:
      return make_const(0);
    case Op::Coord:
      return make_const(e->coord == coord ? 1 : 0);
    case Op::Add:
      return make_node(Op::Add, differentiate_expr(e->a, coord),
                       differentiate_expr(e->b, coord));
    case Op::Sub:
      return make_node(Op::Sub, differentiate_expr(e->a, coord),
                       differentiate_expr(e->b, coord));
    case Op::Mul:
      return make_node(Op::Add,
                       make_node(Op::Mul, differentiate_expr(e->a, coord), e->b),
                       make_node(Op::Mul, e->a, differentiate_expr(e->b, coord)));
    case Op::Div:
      // (u/v)' = u'/v - u v'/v^2
      return make_node(
          Op::Sub, make_node(Op::Div, differentiate_expr(e->a, coord), e->b),
          make_node(Op::Div, make_node(Op::Mul, e->a, differentiate_expr(e->b, coord)),
                    make_pow(e->b, 2)));
    case Op::Neg:
      return make_node(Op::Neg, differentiate_expr(e->a, coord));
    case Op::Pow:
      if (e->exponent == 0) return make_const(0);
      return make_node(
          Op::Mul,
          make_node(Op::Mul, make_const(e->exponent), make_pow(e->a, e->exponent - 1)),
          differentiate_expr(e->a, coord));
    case Op::Exp:
      return make_node(Op::Mul, make_node(Op::Exp, e->a),
                       differentiate_expr(e->a, coord));
    case Op::Log:
      return make_node(Op::Div, differentiate_expr(e->a, coord), e->a);
  }
  throw std::logic_error("differentiate: bad op");
}

// ------------------------------------------------------------- substitution

namespace {

ExprPtr substitute_rec(const ExprPtr& e,
                       const std::unordered_map<std::string, ExprPtr>& repl) {
  using Op = ExprNode::Op;
  switch (e->op) {
    case Op::Const:
      return e;
    case Op::Coord: {
      auto it = repl.find(e->coord);
      if (it == repl.end())
        throw UnknownIdentifier(0, e->coord);
      return it->second;
    }
    case Op::Pow:
      return make_pow(substitute_rec(e->a, repl), e->exponent);
    case Op::Neg:
    case Op::Exp:
    case Op::Log:
      return make_node(e->op, substitute_rec(e->a, repl));
    default:
      return make_node(e->op, substitute_rec(e->a, repl), substitute_rec(e->b, repl));
  }
}

}  // namespace

// ----------------------------------------------------------- ScalarExpr API

std::string ScalarExpr::str() const { return print_expr(root_); }

double ScalarExpr::evaluate(const std::vector<double>& point) const {
  chart_.require_admissible(point);
  return evaluate_expr(root_, chart_, point);
}

ScalarExpr ScalarExpr::differentiate(const std::string& coord) const {
  if (chart_.index_of(coord) < 0)
    throw UnknownIdentifier(0, coord);
  return {chart_, differentiate_expr(root_, coord)};
}

ScalarExpr ScalarExpr::simplify() const {
  return {chart_, nf::to_expr(nf::normalize(root_))};
}

bool ScalarExpr::is_structurally_zero() const {
  return nf::normalize(root_).is_zero();
}

ScalarExpr ScalarExpr::substitute(
    const Chart& target, const std::unordered_map<std::string, ExprPtr>& repl) const {
  return {target, substitute_rec(root_, repl)};
}

ScalarExpr operator+(const ScalarExpr& x, const ScalarExpr& y) {
  require_same_chart(x.chart(), y.chart(), "operator+");
  return {x.chart(), make_node(ExprNode::Op::Add, x.root(), y.root())};
}
ScalarExpr operator-(const ScalarExpr& x, const ScalarExpr& y) {
  require_same_chart(x.chart(), y.chart(), "operator-");
  return {x.chart(), make_node(ExprNode::Op::Sub, x.root(), y.root())};
}
ScalarExpr operator*(const ScalarExpr& x, const ScalarExpr& y) {
  require_same_chart(x.chart(), y.chart(), "operator*");
  return {x.chart(), make_node(ExprNode::Op::Mul, x.root(), y.root())};
}
ScalarExpr operator/(const ScalarExpr& x, const ScalarExpr& y) {
  require_same_chart(x.chart(), y.chart(), "operator/");
  return {x.chart(), make_node(ExprNode::Op::Div, x.root(), y.root())};
}
ScalarExpr ScalarExpr::operator-() const {
  return {chart_, make_node(ExprNode::Op::Neg, root_)};
}

ScalarExpr constant(const Chart& chart, Rational v) {
  return {chart, make_const(v)};
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Chart& chart) : text_(text), chart_(chart) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(pos_, "unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        e = make_node(ExprNode::Op::Add, e, term());
      } else if (accept('-')) {
        e = make_node(ExprNode::Op::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        e = make_node(ExprNode::Op::Mul, e, factor());
      } else if (accept('/')) {
        e = make_node(ExprNode::Op::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  ExprPtr factor() {
    skip_ws();
    bool negated = accept('-');
    ExprPtr e = base();
    skip_ws();
    if (accept('^')) e = make_pow(e, signed_int());
    if (negated) e = make_node(ExprNode::Op::Neg, e);
    return e;
  }

  ExprPtr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string id = ident();
      if (id == "exp" || id == "log") {
        skip_ws();
        expect('(');
        ExprPtr arg = expr();
        expect(')');
        return make_node(id == "exp" ? ExprNode::Op::Exp : ExprNode::Op::Log, arg);
      }
      if (chart_.index_of(id) < 0) throw UnknownIdentifier(start, id);
      return make_coord(id);
    }
    throw ParseError(pos_, "expected number, identifier or '('");
  }

  ExprPtr number() {
    std::int64_t intpart = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      intpart = intpart * 10 + (text_[pos_] - '0');
      if (intpart < 0) throw ParseError(start, "integer literal overflow");
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::int64_t frac = 0, scale = 1;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        frac = frac * 10 + (text_[pos_] - '0');
        scale *= 10;
        if (frac < 0 || scale < 0) throw ParseError(start, "decimal literal overflow");
        ++pos_;
      }
      return make_const(Rational(intpart) + Rational(frac, scale));
    }
    return make_const(Rational(intpart));
  }

  int signed_int() {
    skip_ws();
    bool neg = accept('-');
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(pos_, "expected integer exponent");
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c))
      throw ParseError(pos_, std::string("expected '") + c + "'");
  }

  const std::string& text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarExpr parse(const std::string& text, const Chart& chart) {
  return {chart, Parser(text, chart).run()};
}

// --------------------------------------------------------------- zero test

std::string ZeroVerdict::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::SymbolicZero:
      os << "SymbolicZero";
      break;
    case Kind::NonZero: {
      os << "NonZero(value=" << value << " at (";
      for (std::size_t i = 0; i < witness.size(); ++i)
        os << (i ? ", " : "") << witness[i];
      os << "))";
      break;
    }
    case Kind::ProbablyZero:
      os << "ProbablyZero(samples=" << samples << ", max|value|=" << max_abs << ")";
      break;
  }
  return os.str();
}

ZeroVerdict is_zero(const ScalarExpr& e, int samples, double tol, unsigned seed) {
  if (samples < 1) throw std::invalid_argument("is_zero: samples >= 1 required");
  if (tol <= 0) throw std::invalid_argument("is_zero: tol > 0 required");
  if (e.is_structurally_zero()) return {};

  std::mt19937 rng(seed);
  ZeroVerdict v;
  v.kind = ZeroVerdict::Kind::ProbablyZero;
  int evaluated = 0;
  // Singular sample points are skipped, not counted.
  for (int attempt = 0; attempt < samples * 10 && evaluated < samples; ++attempt) {
    std::vector<double> p = e.chart().sample(rng);
    double val;
    try {
      val = e.evaluate(p);
    } catch (const SingularityError&) {
      continue;
    }
    if (!std::isfinite(val)) continue;
    ++evaluated;
    if (std::abs(val) > tol) {
      v.kind = ZeroVerdict::Kind::NonZero;
      v.witness = p;
      v.value = val;
      return v;
    }
    v.max_abs = std::max(v.max_abs, std::abs(val));
  }
  if (evaluated == 0)
    throw SamplingError("no admissible sample points found for zero test");
  v.samples = evaluated;
  return v;
}

}  // namespace pgeom
