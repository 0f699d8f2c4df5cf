#pragma once

#include <optional>

#include "pgeom/bialgebra.hpp"
#include "pgeom/poisson.hpp"

namespace pgeom {

enum class Side { Left, Right };

// A Poisson chart equipped with a group law. The multiplication is given by
// expressions over two suffixed copies of the coordinates ("a1", "b1", "a2",
// "b2", ...); inversion, when present, is over the plain coordinates. The
// identity is stored exactly so frames stay symbolic.
class GroupChart {
 public:
  GroupChart(PoissonChart poisson, const std::vector<std::string>& mul,
             std::vector<Rational> identity,
             std::optional<std::vector<std::string>> inv = std::nullopt);

  const PoissonChart& poisson() const { return poisson_; }
  const Chart& chart() const { return poisson_.chart(); }
  const Chart& doubled_chart() const { return doubled_; }
  const std::vector<ScalarExpr>& mul() const { return mul_; }
  const std::vector<Rational>& identity() const { return identity_; }
  std::vector<double> identity_point() const;
  const std::optional<std::vector<ScalarExpr>>& inv() const { return inv_; }

  // Numeric product of two admissible points.
  std::vector<double> multiply(const std::vector<double>& g,
                               const std::vector<double>& h) const;

 private:
  PoissonChart poisson_;
  Chart doubled_;
  std::vector<ScalarExpr> mul_;
  std::vector<Rational> identity_;
  std::optional<std::vector<ScalarExpr>> inv_;
};

struct InvariantFrame {
  Side side;
  std::vector<MultivectorField> vectors;  // invariant frame fields
  std::vector<CovectorField> forms;       // dual coframe
};

// Left case: vector_i(g) = d mul(g,h)/dh_i at h = e; the coframe is the
// symbolic inverse (adjugate / determinant) of the frame matrix, so the
// dimension is capped at 4 to keep expressions manageable.
InvariantFrame invariant_frame(const GroupChart& G, Side side);

struct MultiplicativityResult {
  bool pass = true;
  double max_defect = 0.0;
  std::vector<double> witness_g, witness_h;  // empty when pass
};

// Samples random pairs (g,h) and compares the bivector matrix at gh against
// J_L pi(h) J_L^T + J_R pi(g) J_R^T.
MultiplicativityResult check_multiplicative(const GroupChart& G, int pairs = 100,
                                            double tol = 1e-9, unsigned seed = 42);

// Left: pi_sharp of each left-invariant coframe element; right: minus
// pi_sharp of each right-invariant coframe element.
std::vector<MultivectorField> dressing_fields(const GroupChart& G, Side side);

// Jacobian matrices of the field components at the identity. Each field must
// vanish there (within tol); dressing fields do, since pi vanishes at e.
std::vector<std::vector<std::vector<double>>> linearize_at_identity(
    const std::vector<MultivectorField>& fields, const GroupChart& G,
    double tol = 1e-9);

// Coadjoint representation matrices under the fixed convention
// <ad*_x alpha, y> = -<alpha, [x,y]>: (A_i)_{jm} = -c^m_{ij}.
std::vector<std::vector<std::vector<Rational>>> coadjoint_matrices(
    const LieAlgebraSC& g);

// Compares linearization matrices with the coadjoint matrices up to one
// global sign; returns the sign (+1 or -1) that matches, or nullopt.
std::optional<int> match_coadjoint(
    const std::vector<std::vector<std::vector<double>>>& lin,
    const LieAlgebraSC& g, double tol = 1e-9);

// d^{jk}_i = d pi^{jk} / d x_i at the given point, indexed [i][j][k].
std::vector<std::vector<std::vector<double>>> linearize_bivector_at(
    const PoissonChart& P, const std::vector<double>& point);

// Numeric rank of the span of the fields at each grid point.
std::vector<std::pair<std::vector<double>, int>> orbit_rank_scan(
    const std::vector<MultivectorField>& fields,
    const std::vector<std::vector<double>>& grid);

}  // namespace pgeom
