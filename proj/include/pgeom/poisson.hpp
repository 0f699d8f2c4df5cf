#pragma once

#include "pgeom/multivec.hpp"

namespace pgeom {

// Hamiltonian flow trajectory. `escaped` is set when integration left the
// admissible domain or blew up numerically; escape is a result, not an error.
struct FlowResult {
  std::vector<std::pair<double, std::vector<double>>> trajectory;
  bool escaped = false;
};

// A chart carrying a Poisson bivector.
class PoissonChart {
 public:
  PoissonChart(Chart chart, MultivectorField pi, std::string label = {})
      : chart_(std::move(chart)), pi_(std::move(pi)), label_(std::move(label)) {
    require_same_chart(chart_, pi_.chart(), "PoissonChart");
    if (pi_.degree() != 2)
      throw std::invalid_argument("PoissonChart: bivector must have degree 2");
  }

  const Chart& chart() const { return chart_; }
  const MultivectorField& pi() const { return pi_; }
  const std::string& label() const { return label_; }

  ScalarExpr bracket(const ScalarExpr& f, const ScalarExpr& g) const;
  MultivectorField sharp(const CovectorField& alpha) const;
  MultivectorField hamiltonian_field(const ScalarExpr& f) const;

  // Verdict over all components of [pi,pi], cross-checked against the
  // coordinate-triple Jacobiator {{f,g},h} + cyc.
  ZeroVerdict check_jacobi(int samples = 100, double tol = 1e-9,
                           unsigned seed = 42) const;

  // Numeric rank of pi at a point; always even by skew symmetry, enforced.
  int rank_at(const std::vector<double>& point, double pivot_tol = 1e-10) const;

  double casimir_drift(const ScalarExpr& f,
                       const std::vector<FlowResult>& flows) const;

  // Pre-screen for Casimir candidacy: bracket(f, x_i) = 0 for every
  // coordinate.
  bool is_casimir_candidate(const ScalarExpr& f) const;

 private:
  Chart chart_;
  MultivectorField pi_;
  std::string label_;
};

// Classical fixed-step RK4 integration of a vector field.
FlowResult flow(const MultivectorField& X, const std::vector<double>& start,
                double t_end, double step);

// Numeric rank of a general matrix via elimination with a pivot threshold.
int numeric_rank(std::vector<std::vector<double>> m, double pivot_tol = 1e-10);

CovectorField differential(const ScalarExpr& f);

}  // namespace pgeom
