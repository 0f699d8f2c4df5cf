#include "pgeom/reduction.hpp"

#include <cmath>

namespace pgeom {

LeafSpec::LeafSpec(TransversalData t, std::vector<double> base)
    : transversals(std::move(t)), base_point(std::move(base)) {
  if (transversals.H.empty())
    throw std::invalid_argument("LeafSpec: at least one transversal required");
  const Chart& c = transversals.H.front().chart();
  c.require_admissible(base_point);
  std::vector<std::vector<double>> dH;
  for (const auto& h : transversals.H) {
    level.push_back(h.evaluate(base_point));
    std::vector<double> row;
    for (const auto& x : c.coords())
      row.push_back(h.differentiate(x).evaluate(base_point));
    dH.push_back(std::move(row));
  }
  if (numeric_rank(dH) != static_cast<int>(transversals.H.size()))
    throw std::invalid_argument(
        "LeafSpec: base point is not regular (dependent differentials)");
}

CoordinateIdeal::CoordinateIdeal(Chart chart, const std::vector<ScalarExpr>& generators)
    : chart_(std::move(chart)), generators_(generators) {
  for (const auto& g : generators_) {
    require_same_chart(chart_, g.chart(), "CoordinateIdeal");
    const ExprPtr& root = g.root();
    int coord = -1;
    Rational value;
    if (root->op == ExprNode::Op::Coord) {
      coord = chart_.index_of(root->coord);
    } else if (root->op == ExprNode::Op::Sub &&
               root->a->op == ExprNode::Op::Coord &&
               root->b->op == ExprNode::Op::Const) {
      coord = chart_.index_of(root->a->coord);
      value = root->b->value;
    }
    if (coord < 0)
      throw std::invalid_argument(
          "CoordinateIdeal: generator must be a coordinate or coordinate - constant: " +
          g.str());
    for (const auto& [seen, v] : bindings_) {
      (void)v;
      if (seen == coord)
        throw std::invalid_argument("CoordinateIdeal: repeated coordinate " +
                                    chart_.coords()[static_cast<std::size_t>(coord)]);
    }
    if (!chart_.domains()[static_cast<std::size_t>(coord)].admits(value.to_double()))
      throw std::invalid_argument(
          "CoordinateIdeal: zero locus leaves the chart domain at " +
          chart_.coords()[static_cast<std::size_t>(coord)]);
    bindings_.emplace_back(coord, value);
  }
}

bool leaf_tangent_check(const LeafSpec& L, const MultivectorField& v,
                        const std::vector<std::vector<double>>& points, double tol) {
  if (v.degree() != 1)
    throw std::invalid_argument("leaf_tangent_check: vector field expected");
  const Chart& c = v.chart();
  for (const auto& p : points) {
    c.require_admissible(p);
    for (std::size_t i = 0; i < L.transversals.H.size(); ++i) {
      if (std::abs(L.transversals.H[i].evaluate(p) - L.level[i]) > 1e-9)
        throw DomainError("leaf_tangent_check: point off the level set of " +
                          L.transversals.names[i]);
      double pairing = 0.0;
      for (int j = 0; j < c.dim(); ++j)
        pairing += L.transversals.H[i].differentiate(c.coords()[static_cast<std::size_t>(j)]).evaluate(p) *
                   v.component({j}).evaluate(p);
      if (std::abs(pairing) > tol) return false;
    }
  }
  return true;
}

std::vector<ZeroVerdict> check_invariant(const ScalarExpr& f, const ActionSpec& A) {
  require_same_chart(f.chart(), A.chart(), "check_invariant");
  std::vector<ZeroVerdict> verdicts;
  CovectorField df = differential(f);
  for (const auto& gen : A.generators) verdicts.push_back(is_zero(pair(df, gen)));
  return verdicts;
}

std::vector<ZeroVerdict> check_bracket_closure(const ScalarExpr& f, const ScalarExpr& g,
                                               const ActionSpec& A,
                                               const PoissonChart& P) {
  for (const auto& [name, h] : {std::pair<const char*, const ScalarExpr&>{"f", f},
                                {"g", g}})
    for (const auto& v : check_invariant(h, A))
      if (v.nonzero())
        throw InvariancePreconditionError(
            std::string("check_bracket_closure: ") + name + " is not invariant");
  return check_invariant(P.bracket(f, g), A);
}

ScalarExpr ideal_reduce(const ScalarExpr& f, const CoordinateIdeal& I) {
  require_same_chart(f.chart(), I.chart(), "ideal_reduce");
  const Chart& c = I.chart();
  std::unordered_map<std::string, ExprPtr> repl;
  for (int i = 0; i < c.dim(); ++i)
    repl[c.coords()[static_cast<std::size_t>(i)]] =
        make_coord(c.coords()[static_cast<std::size_t>(i)]);
  for (const auto& [coord, value] : I.bindings())
    repl[c.coords()[static_cast<std::size_t>(coord)]] = make_const(value);
  try {
    return f.substitute(c, repl).simplify();
  } catch (const SingularityError& e) {
    throw MembershipUndecided(e.subexpr);
  }
}

IdealCheckResult check_ideal_invariance(const CoordinateIdeal& I, const ActionSpec& A) {
  IdealCheckResult result;
  for (std::size_t g = 0; g < I.generators().size(); ++g) {
    CovectorField dgen = differential(I.generators()[g]);
    for (std::size_t i = 0; i < A.generators.size(); ++i) {
      ScalarExpr derivative = pair(dgen, A.generators[i]);
      if (!ideal_reduce(derivative, I).is_structurally_zero()) {
        result.pass = false;
        result.failures.emplace_back(static_cast<int>(g), static_cast<int>(i));
      }
    }
  }
  return result;
}

IdealCheckResult check_ideal_poisson_closure(const CoordinateIdeal& I,
                                             const TransversalData& T,
                                             const PoissonChart& P) {
  IdealCheckResult result;
  for (std::size_t i = 0; i < T.H.size(); ++i)
    for (std::size_t j = i + 1; j < T.H.size(); ++j)
      if (!ideal_reduce(P.bracket(T.H[i], T.H[j]), I).is_structurally_zero()) {
        result.pass = false;
        result.failures.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
  return result;
}

ScalarExpr reduced_bracket(const ScalarExpr& fbar, const ScalarExpr& gbar,
                           const CoordinateIdeal& I, const ActionSpec& A,
                           const PoissonChart& P) {
  for (const auto& [name, rep] :
       {std::pair<const char*, const ScalarExpr&>{"first", fbar}, {"second", gbar}}) {
    CovectorField d = differential(rep);
    for (const auto& gen : A.generators)
      if (!ideal_reduce(pair(d, gen), I).is_structurally_zero())
        throw InvariancePreconditionError(
            std::string("reduced_bracket: ") + name +
            " representative is not invariant modulo the ideal");
  }
  if (!check_ideal_invariance(I, A).pass)
    throw InvariancePreconditionError(
        "reduced_bracket: ideal is not invariant under the action");
  return ideal_reduce(P.bracket(fbar, gbar), I);
}

}  // namespace pgeom
