#include <doctest.h>

#include <cmath>
#include <random>

#include "pgeom/expr.hpp"
#include "pgeom/normform.hpp"

using namespace pgeom;

namespace {

Chart ab_chart() { return Chart("ab", {"a", "b"}); }
Chart ab_pos() {
  return Chart("ab+", {"a", "b"}, {Domain::positive(), Domain::positive()});
}

// Random expression generator for property tests. Stays away from division
// so that generated expressions are total on the sampling box.
ExprPtr random_expr(std::mt19937& rng, const Chart& chart, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<int> c(-3, 3);
      return make_const(Rational(c(rng)));
    }
    case 1: {
      std::uniform_int_distribution<std::size_t> i(0, chart.coords().size() - 1);
      return make_coord(chart.coords()[i(rng)]);
    }
    case 2:
      return make_node(ExprNode::Op::Add, random_expr(rng, chart, depth - 1),
                       random_expr(rng, chart, depth - 1));
    case 3:
      return make_node(ExprNode::Op::Sub, random_expr(rng, chart, depth - 1),
                       random_expr(rng, chart, depth - 1));
    case 4:
      return make_node(ExprNode::Op::Mul, random_expr(rng, chart, depth - 1),
                       random_expr(rng, chart, depth - 1));
    case 5:
      return make_node(ExprNode::Op::Neg, random_expr(rng, chart, depth - 1));
    default:
      return make_pow(random_expr(rng, chart, depth - 1), 2);
  }
}

bool same_normal_form(const ScalarExpr& x, const ScalarExpr& y) {
  return (x - y).is_structurally_zero();
}

}  // namespace

TEST_CASE("parse: grammar cases") {
  Chart c = ab_chart();
  CHECK(parse("a*b", c).str() == "a*b");
  ScalarExpr p = parse("a^-1", c);
  CHECK(p.root()->op == ExprNode::Op::Pow);
  CHECK(p.root()->exponent == -1);
  CHECK(p.evaluate({2, 1}) == doctest::Approx(0.5));
  CHECK(parse("1/2 + 0.25", c).evaluate({1, 1}) == doctest::Approx(0.75));
}

TEST_CASE("parse: syntax error carries byte offset") {
  Chart c = Chart("pq", {"p", "q"});
  try {
    parse("exp(p)+log(q", c);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 12);  // end of input
  }
}

TEST_CASE("parse: unknown identifier is named") {
  Chart c = ab_chart();
  try {
    parse("a*z", c);
    FAIL("expected UnknownIdentifier");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.name == "z");
  }
}

TEST_CASE("differentiate: basic rules") {
  Chart c = ab_chart();
  CHECK(same_normal_form(parse("a*b", c).differentiate("a"), parse("b", c)));
  Chart cp = ab_pos();
  CHECK(same_normal_form(parse("log(a)", cp).differentiate("a"), parse("1/a", cp)));
  Chart pq = Chart("pq", {"p", "q"});
  CHECK(parse("exp(p)", pq).differentiate("q").is_structurally_zero());
}

TEST_CASE("simplify: rational normal form") {
  Chart c = ab_chart();
  CHECK(parse("(1/(a*b))*(a*b)", c).simplify().str() == "1");
  CHECK(parse("a*b - b*a", c).is_structurally_zero());
  SUBCASE("exp atoms merge by normalized argument") {
    Chart pq = Chart("pq", {"p", "q"});
    ScalarExpr e = parse("exp(p)*exp(p)", pq).simplify();
    CHECK(e.str() == "exp(p)^2");
  }
  SUBCASE("idempotent") {
    std::mt19937 rng(7);
    for (int i = 0; i < 40; ++i) {
      ScalarExpr e{c, random_expr(rng, c, 4)};
      ScalarExpr s = e.simplify();
      CHECK(s.simplify().str() == s.str());
    }
  }
}

TEST_CASE("evaluate: values and errors") {
  Chart c = ab_chart();
  CHECK(parse("a*b", c).evaluate({2, 3}) == doctest::Approx(6.0));
  Chart cp = ab_pos();
  CHECK(parse("log(a)", cp).evaluate({1, 5}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(parse("1/b", c).evaluate({1, 0}), SingularityError);
  CHECK_THROWS_AS(parse("a", cp).evaluate({-1, 1}), DomainError);
  CHECK_THROWS_AS(parse("a", c).evaluate({1, 2, 3}), DomainError);
}

TEST_CASE("overflow in exact arithmetic is a hard error") {
  Chart c = ab_chart();
  ScalarExpr big = parse("100000000000", c);
  ScalarExpr e = big * big * big;
  CHECK_THROWS_AS(e.simplify(), OverflowError);
}

TEST_CASE("is_zero verdicts") {
  Chart c = ab_chart();
  CHECK(is_zero(parse("a*b - b*a", c)).symbolic_zero());

  Chart iv = Chart("a", {"a"}, {Domain::interval(Rational(1, 10), Rational(2))});
  ZeroVerdict v = is_zero(parse("a - 1", iv));
  CHECK(v.kind == ZeroVerdict::Kind::NonZero);
  REQUIRE(v.witness.size() == 1);
  CHECK(std::abs(v.witness[0] - 1.0 - v.value) < 1e-12);

  SUBCASE("exp/log cancellation invisible to the normal form") {
    Chart cp = ab_pos();
    ZeroVerdict pz = is_zero(parse("log(a*b) - log(a) - log(b)", cp), 200, 1e-9);
    CHECK(pz.kind == ZeroVerdict::Kind::ProbablyZero);
    CHECK(pz.max_abs < 1e-9);
  }
}

TEST_CASE("property: parse/print round trip preserves normal form") {
  Chart c = ab_chart();
  std::mt19937 rng(42);
  for (int i = 0; i < 60; ++i) {
    ScalarExpr e{c, random_expr(rng, c, 4)};
    ScalarExpr back = parse(e.str(), c);
    CHECK(same_normal_form(e, back));
    ScalarExpr sback = parse(e.simplify().str(), c);
    CHECK(same_normal_form(e, sback));
  }
}

TEST_CASE("property: differentiation is linear and Leibniz") {
  Chart c = ab_chart();
  std::mt19937 rng(1);
  for (int i = 0; i < 30; ++i) {
    ScalarExpr f{c, random_expr(rng, c, 3)};
    ScalarExpr g{c, random_expr(rng, c, 3)};
    ScalarExpr sum_d = (f + g).differentiate("a");
    CHECK(same_normal_form(sum_d, f.differentiate("a") + g.differentiate("a")));
    ScalarExpr prod_d = (f * g).differentiate("a");
    CHECK(same_normal_form(prod_d, f.differentiate("a") * g + f * g.differentiate("a")));
  }
}

TEST_CASE("differentiate agrees with central finite differences") {
  Chart cp = ab_pos();
  const char* exprs[] = {"a^2*b + 1/a", "exp(a - b)", "log(a*b)", "a*exp(b)/(1 + a^2)"};
  std::mt19937 rng(9);
  for (const char* s : exprs) {
    ScalarExpr f = parse(s, cp);
    ScalarExpr df = f.differentiate("a");
    for (int i = 0; i < 10; ++i) {
      std::vector<double> p = cp.sample(rng);
      const double h = 1e-5;
      std::vector<double> pp = p, pm = p;
      pp[0] += h;
      pm[0] -= h;
      double fd = (f.evaluate(pp) - f.evaluate(pm)) / (2 * h);
      double sym = df.evaluate(p);
      double denom = std::max(1.0, std::abs(sym));
      CHECK(std::abs(fd - sym) / denom < 1e-6);
    }
  }
}
