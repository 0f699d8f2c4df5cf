#include "pgeom/multivec.hpp"

#include <algorithm>
#include <optional>

namespace pgeom {

namespace {

// Sorts an index tuple, returning the permutation parity; nullopt on a
// repeated index.
std::optional<std::pair<std::vector<int>, int>> sort_with_parity(
    std::vector<int> idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return std::nullopt;
  return std::make_pair(std::move(idx), sign);
}

ScalarExpr with_sign(const ScalarExpr& f, int sign) {
  return sign >= 0 ? f : -f;
}

}  // namespace

void MultivectorField::set(Index idx, const ScalarExpr& f) {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("MultivectorField::set: index arity != degree");
  auto sorted = sort_with_parity(std::move(idx));
  if (!sorted) return;
  require_same_chart(chart_, f.chart(), "MultivectorField::set");
  comps_[sorted->first] = with_sign(f, sorted->second);
}

void MultivectorField::add_to(Index idx, const ScalarExpr& f) {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("MultivectorField::add_to: index arity != degree");
  auto sorted = sort_with_parity(std::move(idx));
  if (!sorted) return;
  require_same_chart(chart_, f.chart(), "MultivectorField::add_to");
  ScalarExpr g = with_sign(f, sorted->second);
  auto it = comps_.find(sorted->first);
  if (it == comps_.end())
    comps_.emplace(sorted->first, g);
  else
    it->second = it->second + g;
}

ScalarExpr MultivectorField::component(const Index& idx) const {
  auto it = comps_.find(idx);
  if (it != comps_.end()) return it->second;
  return constant(chart_, 0);
}

MultivectorField MultivectorField::simplified() const {
  MultivectorField r(chart_, degree_);
  for (const auto& [idx, f] : comps_) {
    ScalarExpr s = f.simplify();
    if (!s.is_structurally_zero()) r.comps_.emplace(idx, s);
  }
  return r;
}

bool MultivectorField::is_structurally_zero() const {
  for (const auto& [idx, f] : comps_)
    if (!f.is_structurally_zero()) return false;
  return true;
}

std::vector<std::vector<double>> MultivectorField::matrix_at(
    const std::vector<double>& point) const {
  if (degree_ != 2)
    throw std::invalid_argument("matrix_at: degree-2 fields only");
  int n = chart_.dim();
  std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (const auto& [idx, f] : comps_) {
    double v = f.evaluate(point);
    m[static_cast<std::size_t>(idx[0])][static_cast<std::size_t>(idx[1])] = v;
    m[static_cast<std::size_t>(idx[1])][static_cast<std::size_t>(idx[0])] = -v;
  }
  return m;
}

CovectorField CovectorField::zero(const Chart& c) {
  std::vector<ScalarExpr> comps(static_cast<std::size_t>(c.dim()), constant(c, 0));
  return {c, std::move(comps)};
}

CovectorField CovectorField::coordinate(const Chart& c, int i) {
  CovectorField f = zero(c);
  f.components[static_cast<std::size_t>(i)] = constant(c, 1);
  return f;
}

ChartMap ChartMap::identity(const Chart& c) {
  std::vector<ScalarExpr> comps;
  for (const auto& name : c.coords()) comps.emplace_back(c, make_coord(name));
  return {c, c, std::move(comps)};
}

std::vector<double> ChartMap::apply(const std::vector<double>& point) const {
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& f : components) out.push_back(f.evaluate(point));
  return out;
}

ScalarExpr ChartMap::compose(const ScalarExpr& f) const {
  require_same_chart(target, f.chart(), "ChartMap::compose");
  std::unordered_map<std::string, ExprPtr> repl;
  for (int j = 0; j < target.dim(); ++j)
    repl[target.coords()[static_cast<std::size_t>(j)]] =
        components[static_cast<std::size_t>(j)].root();
  return f.substitute(source, repl);
}

std::vector<std::vector<double>> ChartMap::jacobian_at(
    const std::vector<double>& point) const {
  // Symbolic differentiation then evaluation; no finite differences.
  std::size_t rows = components.size();
  std::size_t cols = static_cast<std::size_t>(source.dim());
  std::vector<std::vector<double>> j(rows, std::vector<double>(cols, 0.0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      j[r][c] = components[r].differentiate(source.coords()[c]).evaluate(point);
  return j;
}

MultivectorField add(const MultivectorField& A, const MultivectorField& B) {
  require_same_chart(A.chart(), B.chart(), "add");
  if (A.degree() != B.degree()) throw std::invalid_argument("add: degree mismatch");
  MultivectorField r = A;
  for (const auto& [idx, f] : B.components()) r.add_to(idx, f);
  return r;
}

MultivectorField subtract(const MultivectorField& A, const MultivectorField& B) {
  require_same_chart(A.chart(), B.chart(), "subtract");
  if (A.degree() != B.degree())
    throw std::invalid_argument("subtract: degree mismatch");
  MultivectorField r = A;
  for (const auto& [idx, f] : B.components()) r.add_to(idx, -f);
  return r;
}

MultivectorField scale(const ScalarExpr& f, const MultivectorField& A) {
  MultivectorField r(A.chart(), A.degree());
  for (const auto& [idx, g] : A.components()) r.add_to(idx, f * g);
  return r;
}

MultivectorField wedge(const MultivectorField& A, const MultivectorField& B) {
  require_same_chart(A.chart(), B.chart(), "wedge");
  MultivectorField r(A.chart(), A.degree() + B.degree());
  if (r.degree() > A.chart().dim()) return r;  // no components of that degree
  for (const auto& [ia, fa] : A.components())
    for (const auto& [ib, fb] : B.components()) {
      MultivectorField::Index merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      r.add_to(std::move(merged), fa * fb);
    }
  return r;
}

namespace {

// Left odd derivative: removes index i from each tuple with the sign
// (-1)^position.
MultivectorField odd_derivative(const MultivectorField& A, int i) {
  MultivectorField r(A.chart(), A.degree() - 1);
  for (const auto& [idx, f] : A.components()) {
    for (std::size_t p = 0; p < idx.size(); ++p) {
      if (idx[p] != i) continue;
      MultivectorField::Index rest;
      for (std::size_t q = 0; q < idx.size(); ++q)
        if (q != p) rest.push_back(idx[q]);
      r.add_to(std::move(rest), (p % 2 == 0) ? f : -f);
      break;
    }
  }
  return r;
}

MultivectorField coordinate_partial(const MultivectorField& A, int i) {
  MultivectorField r(A.chart(), A.degree());
  const std::string& x = A.chart().coords()[static_cast<std::size_t>(i)];
  for (const auto& [idx, f] : A.components()) r.add_to(idx, f.differentiate(x));
  return r;
}

}  // namespace

MultivectorField schouten(const MultivectorField& A, const MultivectorField& B) {
  require_same_chart(A.chart(), B.chart(), "schouten");
  int k = A.degree(), l = B.degree();
  if (k + l < 1) throw std::invalid_argument("schouten: k + l >= 1 required");
  MultivectorField r(A.chart(), k + l - 1);
  if (r.degree() > A.chart().dim()) return r;
  // Odd-phase-space form of the bracket, with the left odd derivative:
  //   [A,B] = (-1)^{k+1} sum_i dA/dzeta_i * dB/dx_i - sum_i dA/dx_i * dB/dzeta_i
  // This convention gives [X,Y] = Lie bracket, [X,f] = X(f), L_X pi = [X,pi],
  // graded antisymmetry [A,B] = -(-1)^{(k-1)(l-1)}[B,A], and Jacobi
  // equivalent to [pi,pi] = 0.
  bool first_negative = (k % 2 == 0);
  for (int i = 0; i < A.chart().dim(); ++i) {
    if (k >= 1) {
      MultivectorField t = wedge(odd_derivative(A, i), coordinate_partial(B, i));
      r = first_negative ? subtract(r, t) : add(r, t);
    }
    if (l >= 1)
      r = subtract(r, wedge(coordinate_partial(A, i), odd_derivative(B, i)));
  }
  return r.simplified();
}

MultivectorField lie_derivative(const MultivectorField& X, const MultivectorField& A) {
  if (X.degree() != 1)
    throw std::invalid_argument("lie_derivative: X must be a vector field");
  return schouten(X, A);
}

MultivectorField contract(const MultivectorField& A, const CovectorField& alpha) {
  require_same_chart(A.chart(), alpha.chart, "contract");
  if (A.degree() < 1) throw std::invalid_argument("contract: degree >= 1 required");
  MultivectorField r(A.chart(), A.degree() - 1);
  for (int i = 0; i < A.chart().dim(); ++i) {
    MultivectorField d = odd_derivative(A, i);
    for (const auto& [idx, f] : d.components())
      r.add_to(idx, alpha.components[static_cast<std::size_t>(i)] * f);
  }
  return r;
}

ScalarExpr pair(const CovectorField& alpha, const MultivectorField& X) {
  if (X.degree() != 1) throw std::invalid_argument("pair: vector field expected");
  MultivectorField s = contract(X, alpha);
  return s.component({}).simplify();
}

CovectorField pullback_form(const ChartMap& mu, const CovectorField& theta) {
  require_same_chart(mu.target, theta.chart, "pullback_form");
  std::vector<ScalarExpr> comps;
  for (int i = 0; i < mu.source.dim(); ++i) {
    const std::string& xi = mu.source.coords()[static_cast<std::size_t>(i)];
    ScalarExpr acc = constant(mu.source, 0);
    for (int j = 0; j < mu.target.dim(); ++j) {
      ScalarExpr theta_j = mu.compose(theta.components[static_cast<std::size_t>(j)]);
      acc = acc + theta_j * mu.components[static_cast<std::size_t>(j)].differentiate(xi);
    }
    comps.push_back(acc.simplify());
  }
  return {mu.source, std::move(comps)};
}

std::vector<std::vector<double>> pushforward_bivector_at(
    const ChartMap& mu, const MultivectorField& pi, const std::vector<double>& point) {
  require_same_chart(mu.source, pi.chart(), "pushforward_bivector_at");
  auto j = mu.jacobian_at(point);
  auto p = pi.matrix_at(point);
  std::size_t m = j.size(), n = p.size();
  std::vector<std::vector<double>> jp(m, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t t = 0; t < n; ++t) jp[r][c] += j[r][t] * p[t][c];
  std::vector<std::vector<double>> out(m, std::vector<double>(m, 0.0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t t = 0; t < n; ++t) out[r][c] += jp[r][t] * j[c][t];
  return out;
}

ZeroVerdict field_is_zero(const MultivectorField& A, int samples, double tol,
                          unsigned seed) {
  ZeroVerdict worst;  // SymbolicZero by default
  for (const auto& [idx, f] : A.components()) {
    ZeroVerdict v = is_zero(f, samples, tol, seed);
    if (v.kind == ZeroVerdict::Kind::NonZero) return v;
    if (v.kind == ZeroVerdict::Kind::ProbablyZero) {
      worst.kind = ZeroVerdict::Kind::ProbablyZero;
      worst.samples = v.samples;
      worst.max_abs = std::max(worst.max_abs, v.max_abs);
    }
  }
  return worst;
}

}  // namespace pgeom
