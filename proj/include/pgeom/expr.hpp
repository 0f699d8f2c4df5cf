#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgeom/chart.hpp"
#include "pgeom/rational.hpp"

namespace pgeom {

struct ParseError : std::runtime_error {
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("parse error at offset " + std::to_string(offset) +
                           ": " + what),
        offset(offset) {}
  std::size_t offset;
};

struct UnknownIdentifier : std::runtime_error {
  UnknownIdentifier(std::size_t offset, const std::string& name)
      : std::runtime_error("unknown identifier '" + name + "' at offset " +
                           std::to_string(offset)),
        offset(offset),
        name(name) {}
  std::size_t offset;
  std::string name;
};

// Evaluation hit a pole (division by zero, log of a non-positive value,
// zero raised to a negative power). Carries the offending sub-expression.
struct SingularityError : std::runtime_error {
  explicit SingularityError(const std::string& subexpr)
      : std::runtime_error("evaluation singularity in: " + subexpr),
        subexpr(subexpr) {}
  std::string subexpr;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Op { Const, Coord, Add, Sub, Mul, Div, Neg, Pow, Exp, Log };
  Op op;
  Rational value;     // Const
  std::string coord;  // Coord
  ExprPtr a, b;       // operands
  int exponent = 0;   // Pow
};

ExprPtr make_const(Rational v);
ExprPtr make_coord(std::string name);
ExprPtr make_node(ExprNode::Op op, ExprPtr a, ExprPtr b = nullptr);
ExprPtr make_pow(ExprPtr base, int exponent);

// Symbolic scalar function on a chart. Immutable value type; all
// operations are pure.
class ScalarExpr {
 public:
  ScalarExpr() = default;
  ScalarExpr(Chart chart, ExprPtr root)
      : chart_(std::move(chart)), root_(std::move(root)) {}

  const Chart& chart() const { return chart_; }
  const ExprPtr& root() const { return root_; }
  bool empty() const { return root_ == nullptr; }

  std::string str() const;
  double evaluate(const std::vector<double>& point) const;
  ScalarExpr differentiate(const std::string& coord) const;
  ScalarExpr simplify() const;
  bool is_structurally_zero() const;  // zero after normal form

  // Replaces each source coordinate by the supplied expression; the result
  // lives on `target`, which must be the common chart of the replacements.
  ScalarExpr substitute(const Chart& target,
                        const std::unordered_map<std::string, ExprPtr>& repl) const;

  friend ScalarExpr operator+(const ScalarExpr& x, const ScalarExpr& y);
  friend ScalarExpr operator-(const ScalarExpr& x, const ScalarExpr& y);
  friend ScalarExpr operator*(const ScalarExpr& x, const ScalarExpr& y);
  friend ScalarExpr operator/(const ScalarExpr& x, const ScalarExpr& y);
  ScalarExpr operator-() const;

 private:
  Chart chart_;
  ExprPtr root_;
};

ScalarExpr parse(const std::string& text, const Chart& chart);
ScalarExpr constant(const Chart& chart, Rational v);
std::string print_expr(const ExprPtr& e);
double evaluate_expr(const ExprPtr& e, const Chart& chart,
                     const std::vector<double>& point);
ExprPtr differentiate_expr(const ExprPtr& e, const std::string& coord);

// Zero-test verdict. NonZero carries the first witness point whose value
// exceeds the tolerance; ProbablyZero reports the sampling evidence.
struct ZeroVerdict {
  enum class Kind { SymbolicZero, NonZero, ProbablyZero };
  Kind kind = Kind::SymbolicZero;
  std::vector<double> witness;  // NonZero
  double value = 0.0;           // NonZero: the witnessed value
  int samples = 0;              // ProbablyZero
  double max_abs = 0.0;         // ProbablyZero

  bool symbolic_zero() const { return kind == Kind::SymbolicZero; }
  bool nonzero() const { return kind == Kind::NonZero; }
  std::string str() const;
};

struct SamplingError : std::runtime_error {
  explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

ZeroVerdict is_zero(const ScalarExpr& e, int samples = 100, double tol = 1e-9,
                    unsigned seed = 42);

}  // namespace pgeom
