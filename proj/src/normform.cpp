#include "pgeom/normform.hpp"

#include <algorithm>

namespace pgeom::nf {

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) return false;  // a has the more significant atom
    if (ib->first < ia->first) return true;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ia == a.end() && ib != b.end();
}

Poly poly_zero() { return {}; }

Poly poly_const(const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.emplace(Monomial{}, c);
  return p;
}

Poly poly_atom(const Atom& a) {
  Poly p;
  Monomial m;
  m[a] = 1;
  p.emplace(std::move(m), Rational(1));
  return p;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b) {
    auto it = r.find(m);
    if (it == r.end()) {
      r.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.erase(it);
    }
  }
  return r;
}

Poly neg(const Poly& a) {
  Poly r;
  for (const auto& [m, c] : a) r.emplace(m, -c);
  return r;
}

Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

static Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (const auto& [atom, e] : b) {
    int& v = r[atom];
    v += e;
    if (v == 0) r.erase(atom);
  }
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = mono_mul(ma, mb);
      Rational c = ca * cb;
      auto it = r.find(m);
      if (it == r.end()) {
        if (!c.is_zero()) r.emplace(std::move(m), c);
      } else {
        it->second += c;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

Poly scale(const Poly& a, const Rational& c) {
  Poly r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : a) r.emplace(m, v * c);
  return r;
}

Poly pow(const Poly& a, int e) {
  Poly r = poly_const(1);
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

bool is_const(const Poly& p, Rational* value) {
  if (p.empty()) {
    if (value) *value = Rational(0);
    return true;
  }
  if (p.size() == 1 && p.begin()->first.empty()) {
    if (value) *value = p.begin()->second;
    return true;
  }
  return false;
}

// Divisibility of the leading monomials, atom-wise.
static bool mono_divides(const Monomial& d, const Monomial& m) {
  for (const auto& [atom, e] : d) {
    auto it = m.find(atom);
    if (it == m.end() || it->second < e) return false;
  }
  return true;
}

static Monomial mono_quotient(const Monomial& m, const Monomial& d) {
  Monomial r = m;
  for (const auto& [atom, e] : d) {
    int& v = r[atom];
    v -= e;
    if (v == 0) r.erase(atom);
  }
  return r;
}

std::optional<Poly> try_divide(const Poly& p, const Poly& q) {
  if (q.empty()) return std::nullopt;
  Poly rem = p;
  Poly quot;
  const auto& [lq, cq] = *q.rbegin();
  while (!rem.empty()) {
    const auto& [lm, cm] = *rem.rbegin();
    if (!mono_divides(lq, lm)) return std::nullopt;
    Monomial qm = mono_quotient(lm, lq);
    Rational qc = cm / cq;
    Poly t;
    t.emplace(qm, qc);
    quot = add(quot, t);
    rem = sub(rem, mul(t, q));
  }
  return quot;
}

static Monomial joint_content(const Poly& a, const Poly& b) {
  // Atom-wise minimum exponent over every monomial of both polynomials.
  bool first = true;
  Monomial g;
  auto fold = [&](const Poly& p) {
    for (const auto& [m, c] : p) {
      (void)c;
      if (first) {
        g = m;
        first = false;
        continue;
      }
      Monomial next;
      for (const auto& [atom, e] : g) {
        auto it = m.find(atom);
        if (it != m.end()) next[atom] = std::min(e, it->second);
      }
      g = std::move(next);
      if (g.empty()) return;
    }
  };
  fold(a);
  if (!g.empty() || first) fold(b);
  return g;
}

void RationalForm::reduce() {
  if (den.empty()) throw SingularityError("0 in a denominator");
  if (num.empty()) {
    den = poly_const(1);
    return;
  }
  Monomial g = joint_content(num, den);
  if (!g.empty()) {
    Poly gp;
    gp.emplace(g, Rational(1));
    num = *try_divide(num, gp);
    den = *try_divide(den, gp);
  }
  if (auto q = try_divide(num, den)) {
    num = std::move(*q);
    den = poly_const(1);
  } else if (auto iq = try_divide(den, num)) {
    den = std::move(*iq);
    num = poly_const(1);
  }
  Rational lead = den.rbegin()->second;
  if (!lead.is_one()) {
    Rational inv = Rational(1) / lead;
    num = scale(num, inv);
    den = scale(den, inv);
  }
}

RationalForm rf_const(const Rational& c) {
  RationalForm r;
  r.num = poly_const(c);
  return r;
}

RationalForm rf_add(const RationalForm& a, const RationalForm& b) {
  RationalForm r;
  r.num = add(mul(a.num, b.den), mul(b.num, a.den));
  r.den = mul(a.den, b.den);
  r.reduce();
  return r;
}

RationalForm rf_sub(const RationalForm& a, const RationalForm& b) {
  return rf_add(a, rf_neg(b));
}

RationalForm rf_mul(const RationalForm& a, const RationalForm& b) {
  RationalForm r;
  r.num = mul(a.num, b.num);
  r.den = mul(a.den, b.den);
  r.reduce();
  return r;
}

RationalForm rf_div(const RationalForm& a, const RationalForm& b) {
  if (b.is_zero()) throw SingularityError("division by a structurally-zero expression");
  RationalForm r;
  r.num = mul(a.num, b.den);
  r.den = mul(a.den, b.num);
  r.reduce();
  return r;
}

RationalForm rf_neg(const RationalForm& a) {
  RationalForm r;
  r.num = neg(a.num);
  r.den = a.den;
  return r;
}

RationalForm rf_pow(const RationalForm& a, int e) {
  if (e == 0) return rf_const(1);
  bool invert = e < 0;
  int n = invert ? -e : e;
  RationalForm r;
  r.num = pow(a.num, n);
  r.den = pow(a.den, n);
  if (invert) {
    if (r.num.empty())
      throw SingularityError("negative power of a structurally-zero expression");
    std::swap(r.num, r.den);
  }
  r.reduce();
  return r;
}

RationalForm normalize(const ExprPtr& e) {
  using Op = ExprNode::Op;
  switch (e->op) {
    case Op::Const:
      return rf_const(e->value);
    case Op::Coord: {
      RationalForm r;
      r.num = poly_atom(Atom{Atom::Kind::Coord, e->coord, nullptr});
      return r;
    }
    case Op::Add:
      return rf_add(normalize(e->a), normalize(e->b));
    case Op::Sub:
      return rf_sub(normalize(e->a), normalize(e->b));
    case Op::Mul:
      return rf_mul(normalize(e->a), normalize(e->b));
    case Op::Div:
      return rf_div(normalize(e->a), normalize(e->b));
    case Op::Neg:
      return rf_neg(normalize(e->a));
    case Op::Pow:
      return rf_pow(normalize(e->a), e->exponent);
    case Op::Exp: {
      RationalForm arg = normalize(e->a);
      if (arg.is_zero()) return rf_const(1);
      ExprPtr canon = to_expr(arg);
      RationalForm r;
      r.num = poly_atom(Atom{Atom::Kind::Exp, print_expr(canon), canon});
      return r;
    }
    case Op::Log: {
      RationalForm arg = normalize(e->a);
      Rational c;
      if (is_const(arg.num, &c) && arg.den == poly_const(1) && c.is_one())
        return rf_const(0);
      ExprPtr canon = to_expr(arg);
      RationalForm r;
      r.num = poly_atom(Atom{Atom::Kind::Log, print_expr(canon), canon});
      return r;
    }
  }
  throw std::logic_error("normalize: bad op");
}

static ExprPtr atom_to_expr(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::Coord:
      return make_coord(a.key);
    case Atom::Kind::Exp:
      return make_node(ExprNode::Op::Exp, a.arg);
    case Atom::Kind::Log:
      return make_node(ExprNode::Op::Log, a.arg);
  }
  throw std::logic_error("atom_to_expr: bad kind");
}

// coeff * prod atom^e with a nonnegative coefficient; sign handled by caller.
static ExprPtr term_to_expr(const Monomial& m, const Rational& coeff) {
  ExprPtr acc;
  if (!coeff.is_one() || m.empty()) acc = make_const(coeff);
  for (const auto& [atom, e] : m) {
    ExprPtr f = atom_to_expr(atom);
    if (e != 1) f = make_pow(f, e);
    acc = acc ? make_node(ExprNode::Op::Mul, acc, f) : f;
  }
  return acc;
}

static ExprPtr poly_to_expr(const Poly& p) {
  if (p.empty()) return make_const(0);
  ExprPtr acc;
  for (const auto& [m, c] : p) {
    bool negative = c < Rational(0);
    ExprPtr t = term_to_expr(m, negative ? -c : c);
    if (!acc) {
      acc = negative ? make_node(ExprNode::Op::Neg, t) : t;
    } else {
      acc = make_node(negative ? ExprNode::Op::Sub : ExprNode::Op::Add, acc, t);
    }
  }
  return acc;
}

ExprPtr to_expr(const RationalForm& rf) {
  ExprPtr n = poly_to_expr(rf.num);
  if (rf.den == poly_const(1)) return n;
  return make_node(ExprNode::Op::Div, n, poly_to_expr(rf.den));
}

}  // namespace pgeom::nf
