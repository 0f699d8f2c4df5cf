#include "pgeom/momentmap.hpp"

#include <cmath>

namespace pgeom {

ActionSpec::ActionSpec(LieBialgebra b, std::vector<MultivectorField> gens)
    : bialgebra(std::move(b)), generators(std::move(gens)) {
  if (static_cast<int>(generators.size()) != bialgebra.algebra.dim())
    throw std::invalid_argument("ActionSpec: generator count != bialgebra dimension");
  for (const auto& g : generators) {
    if (g.degree() != 1)
      throw std::invalid_argument("ActionSpec: generators must be vector fields");
    require_same_chart(generators.front().chart(), g.chart(), "ActionSpec");
  }
}

MomentumMap::MomentumMap(ChartMap m, GroupChart g)
    : map(std::move(m)), gstar(std::move(g)) {
  require_same_chart(map.target, gstar.chart(), "MomentumMap");
}

namespace {

// ([xi,eta])_M = sum_k c^k_{ij} (e_k)_M.
MultivectorField bracket_generator(const ActionSpec& A, int i, int j) {
  MultivectorField r(A.chart(), 1);
  for (int k = 0; k < A.bialgebra.algebra.dim(); ++k) {
    const Rational& c = A.bialgebra.algebra.c(k, i, j);
    if (c.is_zero()) continue;
    r = add(r, scale(constant(A.chart(), c), A.generators[static_cast<std::size_t>(k)]));
  }
  return r;
}

// (delta(e_i))_M = sum_{j<k} d^{jk}_i (e_j)_M ^ (e_k)_M.
MultivectorField cobracket_generator(const ActionSpec& A, int i) {
  int n = A.bialgebra.algebra.dim();
  MultivectorField r(A.chart(), 2);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const Rational& d = A.bialgebra.cobracket.d(i, j, k);
      if (d.is_zero()) continue;
      MultivectorField w = wedge(A.generators[static_cast<std::size_t>(j)],
                                 A.generators[static_cast<std::size_t>(k)]);
      r = add(r, scale(constant(A.chart(), d), w));
    }
  return r;
}

}  // namespace

HomomorphismReport check_action_homomorphism(const ActionSpec& A) {
  HomomorphismReport report;
  int n = A.bialgebra.algebra.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MultivectorField lie = schouten(A.generators[static_cast<std::size_t>(i)],
                                      A.generators[static_cast<std::size_t>(j)]);
      MultivectorField expected = bracket_generator(A, i, j);
      if (!subtract(lie, expected).simplified().is_structurally_zero()) {
        if (report.homomorphism) report.witness = std::array<int, 2>{i, j};
        report.homomorphism = false;
      }
      if (!add(lie, expected).simplified().is_structurally_zero())
        report.anti_homomorphism = false;
    }
  return report;
}

std::vector<ZeroVerdict> check_infinitesimal_poisson(const ActionSpec& A,
                                                     const PoissonChart& P) {
  require_same_chart(A.chart(), P.chart(), "check_infinitesimal_poisson");
  std::vector<ZeroVerdict> verdicts;
  for (int i = 0; i < A.bialgebra.algebra.dim(); ++i) {
    MultivectorField defect =
        add(lie_derivative(A.generators[static_cast<std::size_t>(i)], P.pi()),
            cobracket_generator(A, i));
    verdicts.push_back(field_is_zero(defect));
  }
  return verdicts;
}

std::vector<ZeroVerdict> check_momentum_map(const ActionSpec& A,
                                            const MomentumMap& mu,
                                            const PoissonChart& P) {
  require_same_chart(A.chart(), P.chart(), "check_momentum_map");
  require_same_chart(A.chart(), mu.map.source, "check_momentum_map");
  if (static_cast<int>(A.generators.size()) != mu.gstar.chart().dim())
    throw std::invalid_argument(
        "check_momentum_map: basis identification needs dim g = dim G*");

  InvariantFrame frame = invariant_frame(mu.gstar, Side::Left);
  std::vector<ZeroVerdict> verdicts;
  for (std::size_t i = 0; i < A.generators.size(); ++i) {
    CovectorField pulled = pullback_form(mu.map, frame.forms[i]);
    MultivectorField defect = subtract(A.generators[i], P.sharp(pulled));
    verdicts.push_back(field_is_zero(defect));
  }
  return verdicts;
}

PoissonMapResult check_poisson_map(const MomentumMap& mu, const PoissonChart& source,
                                   int samples, double tol, unsigned seed) {
  require_same_chart(mu.map.source, source.chart(), "check_poisson_map");
  const Chart& target = mu.gstar.chart();
  std::mt19937 rng(seed);
  PoissonMapResult result;
  int accepted = 0, attempts = 0;
  while (accepted < samples) {
    if (++attempts > samples * 10)
      throw SamplingError("check_poisson_map: could not sample admissible points");
    std::vector<double> x = source.chart().sample(rng);
    std::vector<double> y;
    std::vector<std::vector<double>> pushed;
    try {
      y = mu.map.apply(x);
      if (!target.admits(y)) continue;
      pushed = pushforward_bivector_at(mu.map, source.pi(), x);
    } catch (const SingularityError&) {
      continue;
    }
    ++accepted;
    auto want = mu.gstar.poisson().pi().matrix_at(y);
    double defect = 0.0;
    for (std::size_t r = 0; r < pushed.size(); ++r)
      for (std::size_t c = 0; c < pushed[r].size(); ++c)
        defect = std::max(defect, std::abs(pushed[r][c] - want[r][c]));
    result.max_defect = std::max(result.max_defect, defect);
    if (defect > tol && result.pass) {
      result.pass = false;
      result.witness = x;
    }
  }
  return result;
}

TransversalData pull_transversals(const MomentumMap& mu,
                                  const std::vector<std::string>& names,
                                  const PoissonChart& source) {
  require_same_chart(mu.map.source, source.chart(), "pull_transversals");
  const Chart& gs = mu.gstar.chart();
  TransversalData data;
  data.names = names;
  for (const auto& name : names) {
    if (gs.index_of(name) < 0)
      throw std::invalid_argument("pull_transversals: unknown coordinate " + name);
    data.H.push_back(mu.map.compose(ScalarExpr(gs, make_coord(name))).simplify());
  }
  // "Since mu is a Poisson map": {H_i,H_j}_M = {y_i,y_j}_{G*} o mu.
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      ScalarExpr lhs = source.bracket(data.H[i], data.H[j]);
      ScalarExpr rhs = mu.gstar.poisson().bracket(
          ScalarExpr(gs, make_coord(names[i])), ScalarExpr(gs, make_coord(names[j])));
      data.bracket_identities.push_back(is_zero(lhs - mu.map.compose(rhs)));
    }
  return data;
}

std::vector<ZeroVerdict> verify_generator_decomposition(
    const ActionSpec& A, const TransversalData& T,
    const std::vector<std::vector<ScalarExpr>>& coeffs, const PoissonChart& P) {
  require_same_chart(A.chart(), P.chart(), "verify_generator_decomposition");
  if (coeffs.size() != A.generators.size())
    throw std::invalid_argument(
        "verify_generator_decomposition: one coefficient list per basis element");
  std::vector<ZeroVerdict> verdicts;
  for (std::size_t i = 0; i < A.generators.size(); ++i) {
    if (coeffs[i].size() != T.H.size())
      throw std::invalid_argument(
          "verify_generator_decomposition: coefficient count != transversal count");
    MultivectorField combo(P.chart(), 1);
    for (std::size_t j = 0; j < T.H.size(); ++j)
      combo = add(combo, scale(coeffs[i][j], P.hamiltonian_field(T.H[j])));
    verdicts.push_back(field_is_zero(subtract(A.generators[i], combo)));
  }
  return verdicts;
}

}  // namespace pgeom
