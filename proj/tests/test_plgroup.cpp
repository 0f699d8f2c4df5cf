#include <doctest.h>

#include <cmath>

#include "pgeom/plgroup.hpp"

using namespace pgeom;

namespace {

PoissonChart gstar_poisson() {
  Chart c("gstar", {"a", "b"}, {Domain::positive(), Domain::unconstrained()});
  MultivectorField pi(c, 2);
  pi.set({0, 1}, parse("a*b", c));
  return {c, pi, "gstar"};
}

GroupChart gstar_group() {
  return GroupChart(gstar_poisson(), {"a1*a2", "a1*b2 + b1"},
                    {Rational(1), Rational(0)},
                    std::vector<std::string>{"1/a", "-b/a"});
}

GroupChart abelian_line() {
  Chart c("line", {"x"});
  MultivectorField pi(c, 2);
  return GroupChart({c, pi}, {"x1 + x2"}, {Rational(0)},
                    std::vector<std::string>{"-x"});
}

bool matches(const std::vector<std::vector<double>>& m,
             const std::vector<std::vector<double>>& want, double tol = 1e-12) {
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want[i].size(); ++j)
      if (std::abs(m[i][j] - want[i][j]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("GroupChart invariants") {
  CHECK_NOTHROW(gstar_group());
  CHECK_NOTHROW(abelian_line());
  SUBCASE("identity law violations are rejected") {
    CHECK_THROWS_AS(GroupChart(gstar_poisson(), {"a1*a2", "a1*b2 + b1"},
                               {Rational(2), Rational(0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GroupChart(gstar_poisson(), {"a1*a2", "b1*b2"},
                               {Rational(1), Rational(0)}),
                    std::invalid_argument);
  }
  SUBCASE("bad inverse is rejected") {
    CHECK_THROWS_AS(GroupChart(gstar_poisson(), {"a1*a2", "a1*b2 + b1"},
                               {Rational(1), Rational(0)},
                               std::vector<std::string>{"1/a", "b/a"}),
                    std::invalid_argument);
  }
  SUBCASE("numeric product") {
    GroupChart G = gstar_group();
    std::vector<double> p = G.multiply({2, 1}, {3, -1});
    CHECK(p[0] == doctest::Approx(6));
    CHECK(p[1] == doctest::Approx(-1));
  }
}

TEST_CASE("invariant_frame") {
  GroupChart G = gstar_group();
  const Chart& c = G.chart();
  SUBCASE("left frame {a da, a db} and coframe {da/a, db/a}") {
    InvariantFrame f = invariant_frame(G, Side::Left);
    CHECK((f.vectors[0].component({0}) - parse("a", c)).is_structurally_zero());
    CHECK(f.vectors[0].component({1}).is_structurally_zero());
    CHECK(f.vectors[1].component({0}).is_structurally_zero());
    CHECK((f.vectors[1].component({1}) - parse("a", c)).is_structurally_zero());
    CHECK((f.forms[0].components[0] - parse("1/a", c)).is_structurally_zero());
    CHECK(f.forms[0].components[1].is_structurally_zero());
    CHECK((f.forms[1].components[1] - parse("1/a", c)).is_structurally_zero());
  }
  SUBCASE("right frame differs: {a da + b db, db}") {
    InvariantFrame f = invariant_frame(G, Side::Right);
    CHECK((f.vectors[0].component({0}) - parse("a", c)).is_structurally_zero());
    CHECK((f.vectors[0].component({1}) - parse("b", c)).is_structurally_zero());
    CHECK(f.vectors[1].component({0}).is_structurally_zero());
    CHECK((f.vectors[1].component({1}) - parse("1", c)).is_structurally_zero());
  }
  SUBCASE("abelian group: frame = {d_x}, coframe = {dx}") {
    InvariantFrame f = invariant_frame(abelian_line(), Side::Left);
    CHECK((f.vectors[0].component({0}) - parse("1", abelian_line().chart())).is_structurally_zero());
    CHECK((f.forms[0].components[0] - parse("1", abelian_line().chart())).is_structurally_zero());
  }
  SUBCASE("property: coframe/frame duality is delta_ij on both sides") {
    for (Side s : {Side::Left, Side::Right}) {
      InvariantFrame f = invariant_frame(G, s);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          ScalarExpr p = pair(f.forms[static_cast<std::size_t>(i)],
                              f.vectors[static_cast<std::size_t>(j)]);
          CHECK((p - constant(c, i == j ? 1 : 0)).is_structurally_zero());
        }
    }
  }
  SUBCASE("frame is the coordinate frame at the identity") {
    InvariantFrame f = invariant_frame(G, Side::Left);
    std::vector<double> e = G.identity_point();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(f.vectors[static_cast<std::size_t>(i)].component({j}).evaluate(e) ==
              doctest::Approx(i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("check_multiplicative") {
  SUBCASE("pi = ab da^db is multiplicative for the G* law") {
    MultiplicativityResult r = check_multiplicative(gstar_group(), 100, 1e-9);
    CHECK(r.pass);
    CHECK(r.max_defect < 1e-9);
  }
  SUBCASE("hand oracle at one pair") {
    // g=(2,1), h=(3,-1): gh=(6,-1); J_L pi(h) J_L^T = [[0,-12],[12,0]],
    // J_R pi(g) J_R^T = [[0,6],[-6,0]], sum (0,1) entry -6 = pi(gh).
    GroupChart G = gstar_group();
    std::vector<double> gh = G.multiply({2, 1}, {3, -1});
    CHECK(G.poisson().pi().matrix_at(gh)[0][1] == doctest::Approx(-6.0));
  }
  SUBCASE("zero bivector is multiplicative on any group") {
    Chart c("gstar", {"a", "b"}, {Domain::positive(), Domain::unconstrained()});
    GroupChart G({c, MultivectorField(c, 2)}, {"a1*a2", "a1*b2 + b1"},
                 {Rational(1), Rational(0)});
    CHECK(check_multiplicative(G).pass);
  }
  SUBCASE("constant bivector fails with a witness pair") {
    Chart c("gstar", {"a", "b"}, {Domain::positive(), Domain::unconstrained()});
    MultivectorField pi(c, 2);
    pi.set({0, 1}, constant(c, 1));
    GroupChart G({c, pi}, {"a1*a2", "a1*b2 + b1"}, {Rational(1), Rational(0)});
    MultiplicativityResult r = check_multiplicative(G);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.witness_g.empty());
    CHECK(r.max_defect > 1e-9);
  }
  SUBCASE("pi vanishes at the identity when multiplicative") {
    GroupChart G = gstar_group();
    auto m = G.poisson().pi().matrix_at(G.identity_point());
    CHECK(matches(m, {{0, 0}, {0, 0}}));
  }
}

TEST_CASE("dressing_fields") {
  GroupChart G = gstar_group();
  const Chart& c = G.chart();
  SUBCASE("left dressing fields are {b db, -b da}") {
    auto l = dressing_fields(G, Side::Left);
    CHECK(l[0].component({0}).is_structurally_zero());
    CHECK((l[0].component({1}) - parse("b", c)).is_structurally_zero());
    CHECK((l[1].component({0}) - parse("-b", c)).is_structurally_zero());
    CHECK(l[1].component({1}).is_structurally_zero());
  }
  SUBCASE("right dressing fields are {-b db, a*b da + b^2 db}") {
    auto r = dressing_fields(G, Side::Right);
    CHECK(r[0].component({0}).is_structurally_zero());
    CHECK((r[0].component({1}) - parse("-b", c)).is_structurally_zero());
    CHECK((r[1].component({0}) - parse("a*b", c)).is_structurally_zero());
    CHECK((r[1].component({1}) - parse("b^2", c)).is_structurally_zero());
  }
  SUBCASE("zero bivector gives zero dressing fields") {
    Chart lc("line", {"x"});
    GroupChart A = abelian_line();
    for (const auto& X : dressing_fields(A, Side::Left))
      CHECK(X.is_structurally_zero());
  }
}

TEST_CASE("linearize_at_identity") {
  GroupChart G = gstar_group();
  SUBCASE("left dressing fields linearize to [[0,0],[0,1]] and [[0,-1],[0,0]]") {
    auto lin = linearize_at_identity(dressing_fields(G, Side::Left), G);
    CHECK(matches(lin[0], {{0, 0}, {0, 1}}));
    CHECK(matches(lin[1], {{0, -1}, {0, 0}}));
  }
  SUBCASE("coadjoint comparison reports a global sign for both sides") {
    LieAlgebraSC g = r2_bialgebra().algebra;
    auto left = linearize_at_identity(dressing_fields(G, Side::Left), G);
    auto right = linearize_at_identity(dressing_fields(G, Side::Right), G);
    auto sl = match_coadjoint(left, g);
    auto sr = match_coadjoint(right, g);
    REQUIRE(sl.has_value());
    REQUIRE(sr.has_value());
    CHECK(*sl == -1);
    CHECK(*sr == 1);
    // Left and minus-right agree to first order.
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          CHECK(left[i][j][k] == doctest::Approx(-right[i][j][k]));
  }
  SUBCASE("coadjoint matrices from structure constants") {
    auto ad = coadjoint_matrices(r2_bialgebra().algebra);
    CHECK(ad[0][1][1] == Rational(-1));
    CHECK(ad[0][0][0] == Rational(0));
    CHECK(ad[1][0][1] == Rational(1));
  }
  SUBCASE("non-vanishing field is rejected") {
    MultivectorField X(G.chart(), 1);
    X.set({0}, constant(G.chart(), 1));
    CHECK_THROWS_AS(linearize_at_identity({X}, G), std::invalid_argument);
  }
  SUBCASE("bivector linearization at e equals the cobracket constants") {
    auto d = linearize_bivector_at(G.poisson(), G.identity_point());
    const Cobracket& cob = r2_bialgebra().cobracket;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          CHECK(d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] ==
                doctest::Approx(cob.d(i, j, k).to_double()));
  }
}

TEST_CASE("orbit_rank_scan") {
  GroupChart G = gstar_group();
  auto fields = dressing_fields(G, Side::Left);
  SUBCASE("G* grid: rank 2 off b=0, rank 0 on b=0") {
    std::vector<std::vector<double>> grid;
    for (double a : {0.5, 1.0, 2.0})
      for (double b : {-1.0, 0.0, 1.0}) grid.push_back({a, b});
    for (const auto& [p, rank] : orbit_rank_scan(fields, grid))
      CHECK(rank == (p[1] == 0.0 ? 0 : 2));
  }
  SUBCASE("orbit rank equals the bivector rank at sampled points") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> p = G.chart().sample(rng);
      auto scan = orbit_rank_scan(fields, {p});
      CHECK(scan[0].second == G.poisson().rank_at(p));
    }
  }
  SUBCASE("so(3)-type chart: rank 2 off the origin, 0 at it") {
    Chart c("xyz", {"x", "y", "z"});
    MultivectorField pi(c, 2);
    pi.set({0, 1}, parse("z", c));
    pi.set({1, 2}, parse("x", c));
    pi.set({2, 0}, parse("y", c));
    PoissonChart P(c, pi);
    std::vector<MultivectorField> span;
    for (int i = 0; i < 3; ++i)
      span.push_back(P.sharp(CovectorField::coordinate(c, i)));
    auto scan = orbit_rank_scan(span, {{0, 0, 0}, {1, 0, 0}, {0.5, -1, 2}});
    CHECK(scan[0].second == 0);
    CHECK(scan[1].second == 2);
    CHECK(scan[2].second == 2);
  }
  SUBCASE("zero fields scan to rank 0 everywhere") {
    Chart c = G.chart();
    std::vector<MultivectorField> zs(2, MultivectorField(c, 1));
    for (const auto& [p, rank] : orbit_rank_scan(zs, {{1, 1}, {2, -1}}))
      CHECK(rank == 0);
  }
}

TEST_CASE("empirical completeness probe of the left dressing flows") {
  // Escape is a reported outcome ("not established"), never a failure. On
  // G* the first field b db/db stays admissible out to t = +-10, while the
  // second, -b da, translates a at constant speed -b and must cross the
  // a > 0 boundary in finite time when b > 0.
  GroupChart G = gstar_group();
  auto fields = dressing_fields(G, Side::Left);
  MultivectorField back0 = scale(constant(G.chart(), -1), fields[0]);
  CHECK_FALSE(flow(fields[0], {1.0, 0.5}, 10.0, 1e-2).escaped);
  CHECK_FALSE(flow(back0, {1.0, 0.5}, 10.0, 1e-2).escaped);

  FlowResult r = flow(fields[1], {1.0, 0.5}, 10.0, 1e-2);
  CHECK(r.escaped);
  // Escape happens near t = 2, where a = 1 - 0.5 t reaches zero.
  CHECK(r.trajectory.back().first > 1.5);
  CHECK(r.trajectory.back().first < 2.5);
}
