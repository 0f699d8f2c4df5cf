#pragma once

#include "pgeom/momentmap.hpp"

namespace pgeom {

// A symplectic-leaf locus cut out as a joint level set of transversal
// pullbacks, anchored at a regular base point.
struct LeafSpec {
  TransversalData transversals;
  std::vector<double> base_point;
  std::vector<double> level;  // H_i(base_point)

  // Requires the base point admissible and the differentials dH_i linearly
  // independent there (numeric rank check).
  LeafSpec(TransversalData t, std::vector<double> base);
};

// Membership in a coordinate-aligned ideal could not be decided because the
// substituted representative hits a pole.
struct MembershipUndecided : std::runtime_error {
  explicit MembershipUndecided(const std::string& what)
      : std::runtime_error("membership undecided - singular representative: " + what) {}
};

// Ideal generated by expressions of the form (coordinate - constant) or a
// bare coordinate; membership is decided by substitution.
class CoordinateIdeal {
 public:
  CoordinateIdeal(Chart chart, const std::vector<ScalarExpr>& generators);

  const Chart& chart() const { return chart_; }
  // (coordinate index, value on the zero locus) per generator.
  const std::vector<std::pair<int, Rational>>& bindings() const { return bindings_; }
  const std::vector<ScalarExpr>& generators() const { return generators_; }

 private:
  Chart chart_;
  std::vector<ScalarExpr> generators_;
  std::vector<std::pair<int, Rational>> bindings_;
};

// <dH_i, v> below tol at each supplied point; points must lie on the level
// set within 1e-9.
bool leaf_tangent_check(const LeafSpec& L, const MultivectorField& v,
                        const std::vector<std::vector<double>>& points,
                        double tol = 1e-9);

// xi_M(f) per basis element.
std::vector<ZeroVerdict> check_invariant(const ScalarExpr& f, const ActionSpec& A);

struct InvariancePreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requires f and g invariant, then tests invariance of bracket(f, g).
std::vector<ZeroVerdict> check_bracket_closure(const ScalarExpr& f, const ScalarExpr& g,
                                               const ActionSpec& A,
                                               const PoissonChart& P);

// Normal form of f modulo I: substitute each bound coordinate by its locus
// value and simplify. f lies in I iff the result is structurally zero.
ScalarExpr ideal_reduce(const ScalarExpr& f, const CoordinateIdeal& I);

struct IdealCheckResult {
  bool pass = true;
  // (generator index, basis index) for invariance; (i, j) pair for closure.
  std::vector<std::pair<int, int>> failures;
};

// ideal_reduce(xi_M(gen), I) = 0 for every generator and basis element.
IdealCheckResult check_ideal_invariance(const CoordinateIdeal& I, const ActionSpec& A);

// ideal_reduce(bracket(H_i, H_j), I) = 0 for all pairs.
IdealCheckResult check_ideal_poisson_closure(const CoordinateIdeal& I,
                                             const TransversalData& T,
                                             const PoissonChart& P);

// bracket of the representatives reduced modulo I. Preconditions (named in
// the thrown error): both representatives invariant modulo I, and the ideal
// invariant under the action.
ScalarExpr reduced_bracket(const ScalarExpr& fbar, const ScalarExpr& gbar,
                           const CoordinateIdeal& I, const ActionSpec& A,
                           const PoissonChart& P);

}  // namespace pgeom
