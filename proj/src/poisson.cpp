#include "pgeom/poisson.hpp"

#include <cmath>

namespace pgeom {

CovectorField differential(const ScalarExpr& f) {
  std::vector<ScalarExpr> comps;
  for (const auto& x : f.chart().coords()) comps.push_back(f.differentiate(x));
  return {f.chart(), std::move(comps)};
}

ScalarExpr PoissonChart::bracket(const ScalarExpr& f, const ScalarExpr& g) const {
  require_same_chart(chart_, f.chart(), "bracket");
  require_same_chart(chart_, g.chart(), "bracket");
  return pair(differential(g), sharp(differential(f)));
}

MultivectorField PoissonChart::sharp(const CovectorField& alpha) const {
  require_same_chart(chart_, alpha.chart, "sharp");
  return contract(pi_, alpha).simplified();
}

MultivectorField PoissonChart::hamiltonian_field(const ScalarExpr& f) const {
  require_same_chart(chart_, f.chart(), "hamiltonian_field");
  // X_f = {f, .} = pi_sharp(df)
  return sharp(differential(f));
}

ZeroVerdict PoissonChart::check_jacobi(int samples, double tol, unsigned seed) const {
  ZeroVerdict schouten_verdict = field_is_zero(schouten(pi_, pi_), samples, tol, seed);

  // Cross-oracle: the function-level Jacobiator on every coordinate triple.
  ZeroVerdict jacobiator_verdict;
  for (int i = 0; i < chart_.dim() && !jacobiator_verdict.nonzero(); ++i)
    for (int j = i + 1; j < chart_.dim() && !jacobiator_verdict.nonzero(); ++j)
      for (int k = j + 1; k < chart_.dim(); ++k) {
        ScalarExpr xi(chart_, make_coord(chart_.coords()[static_cast<std::size_t>(i)]));
        ScalarExpr xj(chart_, make_coord(chart_.coords()[static_cast<std::size_t>(j)]));
        ScalarExpr xk(chart_, make_coord(chart_.coords()[static_cast<std::size_t>(k)]));
        ScalarExpr jac = bracket(bracket(xi, xj), xk) + bracket(bracket(xj, xk), xi) +
                         bracket(bracket(xk, xi), xj);
        ZeroVerdict v = is_zero(jac, samples, tol, seed);
        if (v.nonzero()) {
          jacobiator_verdict = v;
          break;
        }
        if (v.kind == ZeroVerdict::Kind::ProbablyZero)
          jacobiator_verdict.kind = ZeroVerdict::Kind::ProbablyZero;
      }

  if (schouten_verdict.nonzero() != jacobiator_verdict.nonzero())
    throw std::logic_error(
        "check_jacobi: schouten and coordinate-Jacobiator verdicts disagree");
  return schouten_verdict;
}

int numeric_rank(std::vector<std::vector<double>> m, double pivot_tol) {
  std::size_t rows = m.size();
  if (rows == 0) return 0;
  std::size_t cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < rows; ++r)
      if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
    if (std::abs(m[best][col]) <= pivot_tol) continue;
    std::swap(m[row], m[best]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      double factor = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

int PoissonChart::rank_at(const std::vector<double>& point, double pivot_tol) const {
  chart_.require_admissible(point);
  int r = numeric_rank(pi_.matrix_at(point), pivot_tol);
  if (r % 2 != 0)
    throw std::logic_error("rank_at: odd rank of a skew matrix (internal error)");
  return r;
}

FlowResult flow(const MultivectorField& X, const std::vector<double>& start,
                double t_end, double step) {
  if (X.degree() != 1) throw std::invalid_argument("flow: vector field expected");
  if (step <= 0) throw std::invalid_argument("flow: step > 0 required");
  X.chart().require_admissible(start);

  const Chart& chart = X.chart();
  int n = chart.dim();
  std::vector<ScalarExpr> comps;
  for (int i = 0; i < n; ++i) comps.push_back(X.component({i}));

  auto eval_field = [&](const std::vector<double>& p) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] = evaluate_expr(comps[static_cast<std::size_t>(i)].root(), chart, p);
    return v;
  };
  auto blown_up = [&](const std::vector<double>& p) {
    for (double x : p)
      if (!std::isfinite(x) || std::abs(x) > 1e12) return true;
    return false;
  };

  FlowResult result;
  std::vector<double> p = start;
  double t = 0.0;
  result.trajectory.emplace_back(t, p);
  int steps = static_cast<int>(std::ceil(t_end / step - 1e-12));
  for (int s = 0; s < steps; ++s) {
    double h = std::min(step, t_end - t);
    try {
      std::vector<double> k1 = eval_field(p);
      std::vector<double> q(p);
      for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] + 0.5 * h * k1[static_cast<std::size_t>(i)];
      std::vector<double> k2 = eval_field(q);
      for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] + 0.5 * h * k2[static_cast<std::size_t>(i)];
      std::vector<double> k3 = eval_field(q);
      for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] + h * k3[static_cast<std::size_t>(i)];
      std::vector<double> k4 = eval_field(q);
      for (int i = 0; i < n; ++i)
        p[static_cast<std::size_t>(i)] += h / 6.0 *
            (k1[static_cast<std::size_t>(i)] + 2 * k2[static_cast<std::size_t>(i)] +
             2 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
    } catch (const SingularityError&) {
      result.escaped = true;
      break;
    }
    t += h;
    if (blown_up(p) || !chart.admits(p)) {
      result.escaped = true;
      break;
    }
    result.trajectory.emplace_back(t, p);
  }
  return result;
}

double PoissonChart::casimir_drift(const ScalarExpr& f,
                                   const std::vector<FlowResult>& flows) const {
  require_same_chart(chart_, f.chart(), "casimir_drift");
  double drift = 0.0;
  for (const auto& fr : flows) {
    if (fr.trajectory.empty()) continue;
    double f0 = f.evaluate(fr.trajectory.front().second);
    for (const auto& [t, p] : fr.trajectory) {
      (void)t;
      drift = std::max(drift, std::abs(f.evaluate(p) - f0));
    }
  }
  return drift;
}

bool PoissonChart::is_casimir_candidate(const ScalarExpr& f) const {
  for (const auto& x : chart_.coords()) {
    ScalarExpr b = bracket(f, ScalarExpr(chart_, make_coord(x)));
    if (!b.is_structurally_zero()) return false;
  }
  return true;
}

}  // namespace pgeom
