#pragma once

#include "pgeom/plgroup.hpp"

namespace pgeom {

// Infinitesimal action: one generator vector field per basis element of the
// bialgebra.
struct ActionSpec {
  LieBialgebra bialgebra;
  std::vector<MultivectorField> generators;

  ActionSpec(LieBialgebra b, std::vector<MultivectorField> gens);
  const Chart& chart() const { return generators.front().chart(); }
};

// The engine tests both the homomorphism and the anti-homomorphism variant
// of [xi_M, eta_M] = ([xi,eta])_M; conventions for left vs right actions
// differ by this sign, so the report says which one holds.
struct HomomorphismReport {
  bool homomorphism = true;
  bool anti_homomorphism = true;
  // First basis pair violating the homomorphism variant, when any.
  std::optional<std::array<int, 2>> witness;

  bool either() const { return homomorphism || anti_homomorphism; }
};

HomomorphismReport check_action_homomorphism(const ActionSpec& A);

// Per basis element: lie_derivative(xi_M, pi) + (delta(xi))_M, where a wedge
// of basis elements acts as the wedge of the corresponding generators.
std::vector<ZeroVerdict> check_infinitesimal_poisson(const ActionSpec& A,
                                                     const PoissonChart& P);

struct MomentumMap {
  ChartMap map;  // from the M chart into the G* chart
  GroupChart gstar;

  MomentumMap(ChartMap m, GroupChart g);
};

// Per basis element: xi_M - sharp(mu^* theta_xi) with theta_xi the
// left-invariant coframe element under the basis identification.
std::vector<ZeroVerdict> check_momentum_map(const ActionSpec& A,
                                            const MomentumMap& mu,
                                            const PoissonChart& P);

struct PoissonMapResult {
  bool pass = true;
  double max_defect = 0.0;
  std::vector<double> witness;  // source point, empty when pass
};

// Samples source points and compares the pushed-forward bivector with the
// target bivector at the image.
PoissonMapResult check_poisson_map(const MomentumMap& mu, const PoissonChart& source,
                                   int samples = 100, double tol = 1e-9,
                                   unsigned seed = 42);

struct TransversalData {
  std::vector<std::string> names;  // transversal coordinates on G*
  std::vector<ScalarExpr> H;       // pullbacks on the M chart
  // {H_i,H_j}_M - {y_i,y_j}_{G*} o mu for each i < j.
  std::vector<ZeroVerdict> bracket_identities;
};

TransversalData pull_transversals(const MomentumMap& mu,
                                  const std::vector<std::string>& names,
                                  const PoissonChart& source);

// Verifies xi_M = sum_i c_i(xi) X_{H_i} for supplied coefficient
// expressions; no solving.
std::vector<ZeroVerdict> verify_generator_decomposition(
    const ActionSpec& A, const TransversalData& T,
    const std::vector<std::vector<ScalarExpr>>& coeffs, const PoissonChart& P);

}  // namespace pgeom
