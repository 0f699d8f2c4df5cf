#include "pgeom/plgroup.hpp"

#include <cmath>

namespace pgeom {

namespace {

Chart doubled(const Chart& c) {
  std::vector<std::string> names;
  std::vector<Domain> doms;
  for (const char* suffix : {"1", "2"})
    for (int i = 0; i < c.dim(); ++i) {
      names.push_back(c.coords()[static_cast<std::size_t>(i)] + suffix);
      doms.push_back(c.domains()[static_cast<std::size_t>(i)]);
    }
  return Chart(c.name() + "x" + c.name(), std::move(names), std::move(doms));
}

// Replacement map sending one suffixed copy to fixed constants and the
// other to the plain coordinates.
std::unordered_map<std::string, ExprPtr> slot_substitution(
    const Chart& base, const std::vector<Rational>& consts, int const_slot) {
  std::unordered_map<std::string, ExprPtr> repl;
  for (int i = 0; i < base.dim(); ++i) {
    const std::string& x = base.coords()[static_cast<std::size_t>(i)];
    repl[x + (const_slot == 1 ? "1" : "2")] =
        make_const(consts[static_cast<std::size_t>(i)]);
    repl[x + (const_slot == 1 ? "2" : "1")] = make_coord(x);
  }
  return repl;
}

ScalarExpr det_rec(const Chart& chart,
                   const std::vector<std::vector<ScalarExpr>>& m,
                   std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return m[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[0])];
  ScalarExpr acc = constant(chart, 0);
  for (std::size_t p = 0; p < cols.size(); ++p) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + static_cast<std::ptrdiff_t>(p));
    ScalarExpr term = m[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[p])] *
                      det_rec(chart, m, sub_rows, sub_cols);
    acc = (p % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

ScalarExpr determinant(const Chart& chart, const std::vector<std::vector<ScalarExpr>>& m) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) idx.push_back(i);
  return det_rec(chart, m, idx, idx);
}

// Cofactor of entry (r, c).
ScalarExpr cofactor(const Chart& chart, const std::vector<std::vector<ScalarExpr>>& m,
                    int r, int c) {
  std::vector<int> rows, cols;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) {
    if (i != r) rows.push_back(i);
    if (i != c) cols.push_back(i);
  }
  if (rows.empty()) return constant(chart, 1);
  ScalarExpr minor = det_rec(chart, m, rows, cols);
  return ((r + c) % 2 == 0) ? minor : -minor;
}

std::vector<std::vector<double>> matmul(const std::vector<std::vector<double>>& A,
                                        const std::vector<std::vector<double>>& B) {
  std::size_t n = A.size(), m = B[0].size(), k = B.size();
  std::vector<std::vector<double>> r(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) r[i][j] += A[i][l] * B[l][j];
  return r;
}

std::vector<std::vector<double>> transpose(const std::vector<std::vector<double>>& A) {
  std::vector<std::vector<double>> r(A[0].size(), std::vector<double>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[0].size(); ++j) r[j][i] = A[i][j];
  return r;
}

}  // namespace

GroupChart::GroupChart(PoissonChart poisson, const std::vector<std::string>& mul,
                       std::vector<Rational> identity,
                       std::optional<std::vector<std::string>> inv)
    : poisson_(std::move(poisson)),
      doubled_(doubled(poisson_.chart())),
      identity_(std::move(identity)) {
  const Chart& base = poisson_.chart();
  int n = base.dim();
  if (static_cast<int>(mul.size()) != n)
    throw std::invalid_argument("GroupChart: mul component count != dimension");
  if (static_cast<int>(identity_.size()) != n)
    throw std::invalid_argument("GroupChart: identity dimension mismatch");
  for (const auto& text : mul) mul_.push_back(parse(text, doubled_));
  if (inv) {
    if (static_cast<int>(inv->size()) != n)
      throw std::invalid_argument("GroupChart: inv component count != dimension");
    std::vector<ScalarExpr> comps;
    for (const auto& text : *inv) comps.push_back(parse(text, base));
    inv_ = std::move(comps);
  }
  base.require_admissible(identity_point());

  // Identity laws, checked as simplified expressions.
  for (int slot : {1, 2}) {
    auto repl = slot_substitution(base, identity_, slot);
    for (int j = 0; j < n; ++j) {
      ScalarExpr r = mul_[static_cast<std::size_t>(j)].substitute(base, repl);
      ScalarExpr xj(base, make_coord(base.coords()[static_cast<std::size_t>(j)]));
      if (!(r - xj).is_structurally_zero())
        throw std::invalid_argument(
            "GroupChart: identity law fails in component " +
            base.coords()[static_cast<std::size_t>(j)] +
            (slot == 1 ? " (left)" : " (right)"));
    }
  }
  if (inv_) {
    std::unordered_map<std::string, ExprPtr> repl;
    for (int i = 0; i < n; ++i) {
      const std::string& x = base.coords()[static_cast<std::size_t>(i)];
      repl[x + "1"] = make_coord(x);
      repl[x + "2"] = (*inv_)[static_cast<std::size_t>(i)].root();
    }
    for (int j = 0; j < n; ++j) {
      ScalarExpr r = mul_[static_cast<std::size_t>(j)].substitute(base, repl);
      if (!(r - constant(base, identity_[static_cast<std::size_t>(j)])).is_structurally_zero())
        throw std::invalid_argument("GroupChart: x * inv(x) != identity in component " +
                                    base.coords()[static_cast<std::size_t>(j)]);
    }
  }
}

std::vector<double> GroupChart::identity_point() const {
  std::vector<double> p;
  for (const auto& v : identity_) p.push_back(v.to_double());
  return p;
}

std::vector<double> GroupChart::multiply(const std::vector<double>& g,
                                         const std::vector<double>& h) const {
  chart().require_admissible(g);
  chart().require_admissible(h);
  std::vector<double> gh(g);
  gh.insert(gh.end(), h.begin(), h.end());
  std::vector<double> p;
  for (const auto& comp : mul_) p.push_back(comp.evaluate(gh));
  return p;
}

InvariantFrame invariant_frame(const GroupChart& G, Side side) {
  const Chart& base = G.chart();
  int n = base.dim();
  if (n > 4)
    throw std::invalid_argument(
        "invariant_frame: symbolic coframe inversion limited to dimension <= 4");

  // Left: differentiate in the second slot, then freeze that slot at e and
  // rename the remaining copy back to the plain coordinates.
  int var_slot = (side == Side::Left) ? 2 : 1;
  auto repl = slot_substitution(base, G.identity(), var_slot);

  InvariantFrame frame{side, {}, {}};
  std::vector<std::vector<ScalarExpr>> F(  // F[j][i]: component j of vector i
      static_cast<std::size_t>(n),
      std::vector<ScalarExpr>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    std::vector<ScalarExpr> comps;
    std::string var = base.coords()[static_cast<std::size_t>(i)] +
                      (var_slot == 2 ? "2" : "1");
    for (int j = 0; j < n; ++j) {
      ScalarExpr d = G.mul()[static_cast<std::size_t>(j)].differentiate(var);
      comps.push_back(d.substitute(base, repl).simplify());
    }
    for (int j = 0; j < n; ++j) F[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = comps[static_cast<std::size_t>(j)];
    frame.vectors.push_back(MultivectorField::vector_field(base, std::move(comps)));
  }

  ScalarExpr det = determinant(base, F).simplify();
  double det_at_e;
  try {
    det_at_e = det.evaluate(G.identity_point());
  } catch (const SingularityError&) {
    det_at_e = 0.0;
  }
  if (det.is_structurally_zero() || std::abs(det_at_e) < 1e-12)
    throw std::invalid_argument(
        "invariant_frame: frame matrix is singular at the identity (malformed group law)");

  // Coframe: rows of F^{-1} via the adjugate.
  for (int i = 0; i < n; ++i) {
    std::vector<ScalarExpr> comps;
    for (int k = 0; k < n; ++k)
      comps.push_back((cofactor(base, F, k, i) / det).simplify());
    frame.forms.emplace_back(base, std::move(comps));
  }
  return frame;
}

MultiplicativityResult check_multiplicative(const GroupChart& G, int pairs,
                                            double tol, unsigned seed) {
  const Chart& base = G.chart();
  int n = base.dim();
  // d mul_j / d x_i (slot 1 and slot 2), symbolic on the doubled chart.
  std::vector<std::vector<ScalarExpr>> d1(static_cast<std::size_t>(n)), d2(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::string& x = base.coords()[static_cast<std::size_t>(i)];
      d1[static_cast<std::size_t>(j)].push_back(G.mul()[static_cast<std::size_t>(j)].differentiate(x + "1"));
      d2[static_cast<std::size_t>(j)].push_back(G.mul()[static_cast<std::size_t>(j)].differentiate(x + "2"));
    }

  std::mt19937 rng(seed);
  MultiplicativityResult result;
  int accepted = 0, attempts = 0;
  while (accepted < pairs) {
    if (++attempts > pairs * 10)
      throw SamplingError("check_multiplicative: could not sample admissible pairs");
    std::vector<double> g = base.sample(rng), h = base.sample(rng);
    std::vector<double> gh;
    try {
      gh = G.multiply(g, h);
    } catch (const SingularityError&) {
      continue;
    }
    if (!base.admits(gh)) continue;
    ++accepted;

    std::vector<double> joint(g);
    joint.insert(joint.end(), h.begin(), h.end());
    std::vector<std::vector<double>> JL(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    std::vector<std::vector<double>> JR = JL;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        JL[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            d2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].evaluate(joint);
        JR[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            d1[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].evaluate(joint);
      }

    auto lhs = G.poisson().pi().matrix_at(gh);
    auto rhs = matmul(matmul(JL, G.poisson().pi().matrix_at(h)), transpose(JL));
    auto rhs2 = matmul(matmul(JR, G.poisson().pi().matrix_at(g)), transpose(JR));
    double defect = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        defect = std::max(defect, std::abs(lhs[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                                           rhs[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                                           rhs2[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]));
    result.max_defect = std::max(result.max_defect, defect);
    if (defect > tol && result.pass) {
      result.pass = false;
      result.witness_g = g;
      result.witness_h = h;
    }
  }
  return result;
}

std::vector<MultivectorField> dressing_fields(const GroupChart& G, Side side) {
  InvariantFrame frame = invariant_frame(G, side);
  std::vector<MultivectorField> fields;
  for (const auto& theta : frame.forms) {
    MultivectorField v = G.poisson().sharp(theta);
    if (side == Side::Right) v = scale(constant(G.chart(), -1), v).simplified();
    fields.push_back(std::move(v));
  }
  return fields;
}

std::vector<std::vector<std::vector<double>>> linearize_at_identity(
    const std::vector<MultivectorField>& fields, const GroupChart& G, double tol) {
  const Chart& base = G.chart();
  int n = base.dim();
  std::vector<double> e = G.identity_point();
  std::vector<std::vector<std::vector<double>>> out;
  for (const auto& X : fields) {
    require_same_chart(base, X.chart(), "linearize_at_identity");
    if (X.degree() != 1)
      throw std::invalid_argument("linearize_at_identity: vector fields expected");
    std::vector<std::vector<double>> M(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j) {
      ScalarExpr comp = X.component({j});
      if (std::abs(comp.evaluate(e)) > tol)
        throw std::invalid_argument(
            "linearize_at_identity: field does not vanish at the identity");
      for (int k = 0; k < n; ++k)
        M[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
            comp.differentiate(base.coords()[static_cast<std::size_t>(k)]).evaluate(e);
    }
    out.push_back(std::move(M));
  }
  return out;
}

std::vector<std::vector<std::vector<Rational>>> coadjoint_matrices(
    const LieAlgebraSC& g) {
  int n = g.dim();
  std::vector<std::vector<std::vector<Rational>>> out;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Rational>> A(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        A[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = -g.c(m, i, j);
    out.push_back(std::move(A));
  }
  return out;
}

std::optional<int> match_coadjoint(
    const std::vector<std::vector<std::vector<double>>>& lin,
    const LieAlgebraSC& g, double tol) {
  auto ad = coadjoint_matrices(g);
  if (lin.size() != ad.size()) return std::nullopt;
  for (int sign : {1, -1}) {
    bool ok = true;
    for (std::size_t i = 0; i < lin.size() && ok; ++i)
      for (std::size_t j = 0; j < lin[i].size() && ok; ++j)
        for (std::size_t k = 0; k < lin[i][j].size() && ok; ++k)
          ok = std::abs(lin[i][j][k] - sign * ad[i][j][k].to_double()) <= tol;
    if (ok) return sign;
  }
  return std::nullopt;
}

std::vector<std::vector<std::vector<double>>> linearize_bivector_at(
    const PoissonChart& P, const std::vector<double>& point) {
  const Chart& c = P.chart();
  int n = c.dim();
  std::vector<std::vector<std::vector<double>>> d(
      static_cast<std::size_t>(n),
      std::vector<std::vector<double>>(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double v = P.pi().component({j, k})
                       .differentiate(c.coords()[static_cast<std::size_t>(i)])
                       .evaluate(point);
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = v;
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = -v;
      }
  return d;
}

std::vector<std::pair<std::vector<double>, int>> orbit_rank_scan(
    const std::vector<MultivectorField>& fields,
    const std::vector<std::vector<double>>& grid) {
  std::vector<std::pair<std::vector<double>, int>> out;
  for (const auto& p : grid) {
    std::vector<std::vector<double>> rows;
    for (const auto& X : fields) {
      X.chart().require_admissible(p);
      std::vector<double> row;
      for (int j = 0; j < X.chart().dim(); ++j)
        row.push_back(X.component({j}).evaluate(p));
      rows.push_back(std::move(row));
    }
    out.emplace_back(p, numeric_rank(rows));
  }
  return out;
}

}  // namespace pgeom
