// Acceptance suite: one verdict line per criterion, exit code = number of
// criteria not met. Verdicts are computed, never asserted: a criterion whose
// stated expectation the mathematics does not support is reported as FAIL
// with an explanation rather than being skipped or forced green.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "pgeom/engine.hpp"

using namespace pgeom;

namespace {

int g_failures = 0;

void report(int n, const std::string& title, bool ok, const std::string& detail) {
  if (!ok) ++g_failures;
  std::printf("%s criterion-%02d %s%s%s\n", ok ? "PASS" : "FAIL", n, title.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
}

PoissonChart gstar() {
  Chart c("gstar", {"a", "b"}, {Domain::positive(), Domain::unconstrained()});
  MultivectorField pi(c, 2);
  pi.set({0, 1}, parse("a*b", c));
  return {c, pi, "gstar"};
}

GroupChart gstar_group() {
  return GroupChart(gstar(), {"a1*a2", "a1*b2 + b1"}, {Rational(1), Rational(0)},
                    std::vector<std::string>{"1/a", "-b/a"});
}

PoissonChart so3_like(const std::string& pi12) {
  Chart c("xyz", {"x", "y", "z"});
  MultivectorField pi(c, 2);
  pi.set({0, 1}, parse(pi12, c));
  pi.set({1, 2}, parse("x", c));
  pi.set({2, 0}, parse("y", c));
  return {c, pi};
}

ActionSpec dressing_action() {
  return ActionSpec(r2_bialgebra(), dressing_fields(gstar_group(), Side::Left));
}

// Independent coordinate-triple Jacobiator {{x,y},z} + cyc on a 3-d chart.
ZeroVerdict triple_jacobiator(const PoissonChart& P) {
  const Chart& c = P.chart();
  ScalarExpr x(c, make_coord(c.coords()[0]));
  ScalarExpr y(c, make_coord(c.coords()[1]));
  ScalarExpr z(c, make_coord(c.coords()[2]));
  ScalarExpr jac = P.bracket(P.bracket(x, y), z) + P.bracket(P.bracket(y, z), x) +
                   P.bracket(P.bracket(z, x), y);
  return is_zero(jac);
}

ScalarExpr random_poly(const Chart& c, const std::vector<int>& vars,
                       std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  ScalarExpr p = constant(c, Rational(coeff(rng)));
  for (int v : vars) {
    ScalarExpr xv(c, make_coord(c.coords()[static_cast<std::size_t>(v)]));
    p = p + constant(c, Rational(coeff(rng))) * xv +
        constant(c, Rational(coeff(rng))) * xv * xv;
  }
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    ScalarExpr u(c, make_coord(c.coords()[static_cast<std::size_t>(vars[i])]));
    ScalarExpr w(c, make_coord(c.coords()[static_cast<std::size_t>(vars[i + 1])]));
    p = p + constant(c, Rational(coeff(rng))) * u * w;
  }
  return p;
}

void criterion1() {
  auto start = std::chrono::steady_clock::now();
  ZeroVerdict v = gstar().check_jacobi();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
  std::ostringstream d;
  d << "verdict " << (v.symbolic_zero() ? "SymbolicZero" : v.str()) << ", "
    << secs << " s";
  report(1, "jacobi-on-paper-bivector", v.symbolic_zero() && secs < 1.0, d.str());
}

void criterion2() {
  PoissonChart base = so3_like("z");
  PoissonChart perturbed = so3_like("z^2");
  ZeroVerdict base_schouten = field_is_zero(schouten(base.pi(), base.pi()));
  ZeroVerdict base_triple = triple_jacobiator(base);
  ZeroVerdict pert_schouten = field_is_zero(schouten(perturbed.pi(), perturbed.pi()));
  ZeroVerdict pert_triple = triple_jacobiator(perturbed);
  bool paths_agree = base_schouten.kind == base_triple.kind &&
                     pert_schouten.kind == pert_triple.kind;
  bool pert_fails_big = pert_schouten.nonzero() && std::abs(pert_schouten.value) > 1e-6;
  bool ok = base_schouten.symbolic_zero() && pert_fails_big && paths_agree;

  std::ostringstream d;
  if (!pert_fails_big && pert_schouten.symbolic_zero()) {
    // The z -> z^2 perturbation keeps [pi,pi] = 0 identically: the only
    // 3-d Jacobiator is {{x,y},z} + cyc = {z^2,z} + {x,x} + {y,y} = 0.
    d << "z^2 perturbation still satisfies Jacobi (both paths SymbolicZero), so the"
         " expected failure cannot occur; ";
    PoissonChart companion = so3_like("z + x");
    ZeroVerdict cv = field_is_zero(schouten(companion.pi(), companion.pi()));
    d << "companion perturbation pi12 = z + x does fail: " << cv.str();
  } else {
    d << "perturbed verdict " << pert_schouten.str();
  }
  report(2, "jacobi-discriminates", ok, d.str());
}

void criterion3() {
  LieBialgebra b = r2_bialgebra();
  bool ok = !b.algebra.jacobi_violation() && !cocycle_violation(b);
  LieBialgebra d = dualize(b);
  // Expect [xi*, eta*]_* = eta* and nothing else.
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = i + 1; j < 2; ++j)
        if (d.algebra.c(k, i, j) != (k == 1 ? Rational(1) : Rational(0))) ok = false;
  ok = ok && double_dual_roundtrip(b);
  report(3, "section-5-bialgebra", ok,
         "dual bracket [xi*,eta*] = " + d.algebra.c(1, 0, 1).str() + "*eta*");
}

void criterion4() {
  auto fields = dressing_fields(gstar_group(), Side::Left);
  std::vector<std::vector<double>> grid;
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {-1.0, 0.0, 1.0}) grid.push_back({a, b});
  bool ok = true;
  for (const auto& [point, rank] : orbit_rank_scan(fields, grid))
    if (rank != (point[1] == 0.0 ? 0 : 2)) ok = false;

  PoissonChart P = gstar();
  std::mt19937 rng(42);
  int agreed = 0;
  std::vector<std::vector<double>> random_points;
  for (int i = 0; i < 100; ++i) random_points.push_back(P.chart().sample(rng));
  for (const auto& [point, rank] : orbit_rank_scan(fields, random_points))
    if (rank == P.rank_at(point)) ++agreed;
  ok = ok && agreed == 100;
  report(4, "dressing-orbit-foliation", ok,
         "rank agreement at " + std::to_string(agreed) + "/100 random points");
}

void criterion5() {
  auto v = check_infinitesimal_poisson(dressing_action(), gstar());
  bool ok = v.size() == 2 && v[0].symbolic_zero() && v[1].symbolic_zero();

  // Direct expansion of the two Eq. (pa) identities.
  PoissonChart P = gstar();
  auto fields = dressing_fields(gstar_group(), Side::Left);
  ok = ok && field_is_zero(lie_derivative(fields[0], P.pi())).symbolic_zero();
  MultivectorField lhs = add(lie_derivative(fields[1], P.pi()),
                             wedge(fields[0], fields[1]));
  ok = ok && field_is_zero(lhs).symbolic_zero();
  report(5, "eq-pa-dressing-fields", ok, "");
}

void criterion6() {
  GroupChart G = gstar_group();
  auto v = check_momentum_map(dressing_action(),
                              MomentumMap(ChartMap::identity(G.chart()), G), gstar());
  bool ok = v.size() == 2 && v[0].symbolic_zero() && v[1].symbolic_zero();

  Chart qp("qp", {"q", "p"});
  MultivectorField pi(qp, 2);
  pi.set({0, 1}, constant(qp, 1));
  PoissonChart P(qp, pi);
  MultivectorField gen(qp, 1);
  gen.set({0}, constant(qp, -1));  // xi_M = -d_q
  ActionSpec A({LieAlgebraSC(1), Cobracket(1)}, {gen});
  Chart y("dual_line", {"y"});
  GroupChart line({y, MultivectorField(y, 2)}, {"y1 + y2"}, {Rational(0)},
                  std::vector<std::string>{"-y"});
  ok = ok && check_momentum_map(A, MomentumMap(ChartMap(qp, y, {parse("p", qp)}), line),
                                P)[0]
                 .symbolic_zero();
  ok = ok && check_momentum_map(A, MomentumMap(ChartMap(qp, y, {parse("q", qp)}), line),
                                P)[0]
                 .nonzero();
  report(6, "eq-mmp-identity-and-classical", ok, "");
}

void criterion7() {
  GroupChart G = gstar_group();
  MultiplicativityResult r = check_multiplicative(G, 100, 1e-9, 42);
  bool ok = r.pass;
  for (const auto& row : G.poisson().pi().matrix_at(G.identity_point()))
    for (double x : row)
      if (x != 0.0) ok = false;
  report(7, "multiplicativity", ok, "max defect " + std::to_string(r.max_defect));
}

void criterion8() {
  GroupChart G = gstar_group();
  auto lin = linearize_at_identity(dressing_fields(G, Side::Left), G);
  auto sign = match_coadjoint(lin, r2_bialgebra().algebra);
  report(8, "linearization-is-coadjoint", sign.has_value(),
         sign ? std::string("global sign ") + (*sign > 0 ? "+1" : "-1")
              : "no sign matches");
}

void criterion9() {
  Chart pq("pq", {"p", "q"});
  MultivectorField pi(pq, 2);
  pi.set({0, 1}, constant(pq, 1));
  PoissonChart P(pq, pi);
  CoordinateIdeal none(pq, {});
  MultivectorField zero_gen(pq, 1);
  ActionSpec trivial({LieAlgebraSC(1), Cobracket(1)}, {zero_gen});
  ScalarExpr r = reduced_bracket(parse("p", pq), parse("q", pq), none, trivial, P);
  bool ok = (r - constant(pq, 1)).is_structurally_zero();

  GroupChart G = gstar_group();
  ChartMap mu(pq, G.chart(), {parse("exp(p)", pq), parse("exp(q)", pq)});
  ok = ok && check_poisson_map(MomentumMap(mu, G), P, 100, 1e-9, 42).pass;
  report(9, "case1-reduced-bracket-and-poisson-map", ok,
         "reduced bracket = " + r.str());
}

void criterion10() {
  PoissonChart P = gstar();
  const Chart& c = P.chart();
  ActionSpec A = dressing_action();
  CoordinateIdeal I(c, {parse("a - 1", c), parse("b", c)});
  bool ok = check_ideal_invariance(I, A).pass;
  TransversalData t;
  t.names = {"a", "b"};
  t.H = {parse("a", c), parse("b", c)};
  ok = ok && check_ideal_poisson_closure(I, t, P).pass;

  // Well-definedness: shifting a representative by 50 random ideal elements
  // h1*(a-1) + h2*b must not change the reduced bracket.
  ScalarExpr f = parse("a + b", c);
  ScalarExpr g = parse("a*b", c);
  ScalarExpr base = reduced_bracket(f, g, I, A, P);
  std::mt19937 rng(42);
  int stable = 0;
  for (int k = 0; k < 50; ++k) {
    ScalarExpr shift = random_poly(c, {0, 1}, rng) * parse("a - 1", c) +
                       random_poly(c, {0, 1}, rng) * parse("b", c);
    if ((reduced_bracket(f + shift, g, I, A, P) - base).is_structurally_zero())
      ++stable;
  }
  ok = ok && stable == 50;
  report(10, "case3-ideal-reduction", ok,
         "representative shifts stable at " + std::to_string(stable) + "/50");
}

void criterion11() {
  Chart c("prod", {"a", "b", "q", "p"},
          {Domain::positive(), Domain::unconstrained(), Domain::unconstrained(),
           Domain::unconstrained()});
  MultivectorField pi(c, 2);
  pi.set({0, 1}, parse("a*b", c));
  pi.set({2, 3}, constant(c, 1));
  PoissonChart P(c, pi);
  MultivectorField xi(c, 1), eta(c, 1);
  xi.set({1}, parse("b", c));
  eta.set({0}, parse("-b", c));
  ActionSpec A(r2_bialgebra(), {xi, eta});

  std::mt19937 rng(42);
  int closed = 0;
  for (int k = 0; k < 100; ++k) {
    ScalarExpr f = random_poly(c, {2, 3}, rng);
    ScalarExpr g = random_poly(c, {2, 3}, rng);
    ScalarExpr h = P.bracket(f, g);
    bool invariant = true;
    for (const auto& gen : A.generators)
      if (!pair(differential(h), gen).simplify().is_structurally_zero())
        invariant = false;
    if (invariant) ++closed;
  }
  report(11, "invariant-functions-close", closed == 100,
         std::to_string(closed) + "/100 invariant brackets");
}

void criterion12() {
  PoissonChart P = so3_like("z");
  const Chart& c = P.chart();
  ScalarExpr casimir = parse("x^2 + y^2 + z^2", c);
  bool ok = P.is_casimir_candidate(casimir);
  FlowResult fr = flow(P.hamiltonian_field(parse("x", c)), {0.0, 1.0, 0.0}, 1.0, 1e-3);
  double drift = P.casimir_drift(casimir, {fr});
  ok = ok && !fr.escaped && drift < 1e-6;
  report(12, "casimir-conservation", ok, "drift " + std::to_string(drift));
}

void criterion13() {
  RunOptions o;
  o.seed = 42;
  std::string first, second;
  for (int round = 0; round < 2; ++round) {
    std::string all;
    Manifest file = load_manifest_file(std::string(PGEOM_FIXTURE_DIR) + "/gstar.toml");
    all += run_manifest(file, o).to_json();
    for (const std::string& name : builtin_fixture_names())
      all += run_manifest(load_manifest_text(builtin_fixture(name)), o).to_json();
    (round == 0 ? first : second) = all;
  }
  report(13, "deterministic-json-reports", !first.empty() && first == second,
         std::to_string(first.size()) + " bytes per round");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13();
  std::printf("%d/13 criteria met\n", 13 - g_failures);
  return g_failures;
}
