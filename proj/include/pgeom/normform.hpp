#pragma once

// Rational-function normal form for scalar expressions. Expressions are
// flattened to a pair of sparse polynomials (numerator, denominator) over
// "atoms": chart coordinates plus opaque exp/log subtrees keyed by the
// canonical print of their normalized argument. No exp/log identities are
// applied; that keeps structural-zero verdicts sound.

#include <map>
#include <optional>
#include <string>

#include "pgeom/expr.hpp"
#include "pgeom/rational.hpp"

namespace pgeom::nf {

struct Atom {
  enum class Kind { Coord, Exp, Log };
  Kind kind = Kind::Coord;
  std::string key;  // coordinate name, or canonical printed argument
  ExprPtr arg;      // Exp/Log only

  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.key < b.key;
  }
  friend bool operator==(const Atom& a, const Atom& b) {
    return a.kind == b.kind && a.key == b.key;
  }
};

// Exponents are strictly positive; negative powers live in the denominator.
using Monomial = std::map<Atom, int>;

// Pure lexicographic monomial order, earliest atom most significant.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using Poly = std::map<Monomial, Rational, MonomialLess>;

Poly poly_zero();
Poly poly_const(const Rational& c);
Poly poly_atom(const Atom& a);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly scale(const Poly& a, const Rational& c);
Poly pow(const Poly& a, int e);  // e >= 0
bool is_const(const Poly& p, Rational* value = nullptr);

// Exact single-divisor polynomial division; nullopt when not exact.
std::optional<Poly> try_divide(const Poly& p, const Poly& q);

// Canonical rational function num/den, den monic with respect to the
// monomial order, common monomial content cancelled.
struct RationalForm {
  Poly num = poly_zero();
  Poly den = poly_const(1);

  bool is_zero() const { return num.empty(); }
  void reduce();

  friend bool operator==(const RationalForm& a, const RationalForm& b) {
    return a.num == b.num && a.den == b.den;
  }
};

RationalForm rf_const(const Rational& c);
RationalForm rf_add(const RationalForm& a, const RationalForm& b);
RationalForm rf_sub(const RationalForm& a, const RationalForm& b);
RationalForm rf_mul(const RationalForm& a, const RationalForm& b);
RationalForm rf_div(const RationalForm& a, const RationalForm& b);
RationalForm rf_neg(const RationalForm& a);
RationalForm rf_pow(const RationalForm& a, int e);

// Tree -> normal form -> canonical tree.
RationalForm normalize(const ExprPtr& e);
ExprPtr to_expr(const RationalForm& rf);

}  // namespace pgeom::nf
