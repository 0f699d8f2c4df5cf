#pragma once

#include <map>
#include <vector>

#include "pgeom/expr.hpp"

namespace pgeom {

// Degree-k antisymmetric contravariant tensor field, components stored
// sparsely on strictly increasing index tuples. Degree 0 is a single scalar
// stored under the empty tuple. All reordering signs come from explicit
// permutation parity.
class MultivectorField {
 public:
  using Index = std::vector<int>;

  MultivectorField(Chart chart, int degree)
      : chart_(std::move(chart)), degree_(degree) {
    if (degree_ < 0) throw std::invalid_argument("MultivectorField: degree < 0");
  }

  static MultivectorField scalar(const ScalarExpr& f) {
    MultivectorField m(f.chart(), 0);
    m.set({}, f);
    return m;
  }

  static MultivectorField vector_field(const Chart& chart,
                                       std::vector<ScalarExpr> comps) {
    if (static_cast<int>(comps.size()) != chart.dim())
      throw std::invalid_argument("vector_field: component count != dimension");
    MultivectorField m(chart, 1);
    for (int i = 0; i < chart.dim(); ++i) m.set({i}, comps[static_cast<std::size_t>(i)]);
    return m;
  }

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<Index, ScalarExpr>& components() const { return comps_; }

  // Accepts indices in any order; the sign of the sorting permutation is
  // applied. Repeated indices contribute nothing.
  void set(Index idx, const ScalarExpr& f);
  void add_to(Index idx, const ScalarExpr& f);

  // Component at a strictly increasing tuple; zero when absent.
  ScalarExpr component(const Index& idx) const;

  MultivectorField simplified() const;
  bool is_structurally_zero() const;

  // Numeric component matrix for degree-2 fields.
  std::vector<std::vector<double>> matrix_at(const std::vector<double>& point) const;

 private:
  Chart chart_;
  int degree_;
  std::map<Index, ScalarExpr> comps_;
};

// 1-form sum f_i dx_i with one component per coordinate.
struct CovectorField {
  Chart chart;
  std::vector<ScalarExpr> components;

  CovectorField(Chart c, std::vector<ScalarExpr> comps)
      : chart(std::move(c)), components(std::move(comps)) {
    if (static_cast<int>(components.size()) != chart.dim())
      throw std::invalid_argument("CovectorField: component count != dimension");
  }

  static CovectorField zero(const Chart& c);
  static CovectorField coordinate(const Chart& c, int i);  // dx_i
};

// Smooth map between charts, one source-chart expression per target
// coordinate.
struct ChartMap {
  Chart source;
  Chart target;
  std::vector<ScalarExpr> components;

  ChartMap(Chart src, Chart tgt, std::vector<ScalarExpr> comps)
      : source(std::move(src)), target(std::move(tgt)), components(std::move(comps)) {
    if (static_cast<int>(components.size()) != target.dim())
      throw std::invalid_argument("ChartMap: component count != target dimension");
  }

  static ChartMap identity(const Chart& c);

  std::vector<double> apply(const std::vector<double>& point) const;
  // Composes a target-chart scalar through the map.
  ScalarExpr compose(const ScalarExpr& f) const;
  std::vector<std::vector<double>> jacobian_at(const std::vector<double>& point) const;
};

MultivectorField add(const MultivectorField& A, const MultivectorField& B);
MultivectorField subtract(const MultivectorField& A, const MultivectorField& B);
MultivectorField scale(const ScalarExpr& f, const MultivectorField& A);

MultivectorField wedge(const MultivectorField& A, const MultivectorField& B);
MultivectorField schouten(const MultivectorField& A, const MultivectorField& B);
MultivectorField lie_derivative(const MultivectorField& X, const MultivectorField& A);
MultivectorField contract(const MultivectorField& A, const CovectorField& alpha);

// Pairing of a vector field with a 1-form.
ScalarExpr pair(const CovectorField& alpha, const MultivectorField& X);

CovectorField pullback_form(const ChartMap& mu, const CovectorField& theta);
std::vector<std::vector<double>> pushforward_bivector_at(
    const ChartMap& mu, const MultivectorField& pi, const std::vector<double>& point);

// Aggregate zero test over every component.
ZeroVerdict field_is_zero(const MultivectorField& A, int samples = 100,
                          double tol = 1e-9, unsigned seed = 42);

}  // namespace pgeom
