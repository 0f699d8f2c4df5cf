#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pgeom/rational.hpp"

namespace pgeom {

// Finite-dimensional Lie algebra given by exact rational structure
// constants c^k_{ij}, [e_i,e_j] = sum_k c^k_{ij} e_k. No tolerances
// anywhere in this module.
class LieAlgebraSC {
 public:
  LieAlgebraSC(int dim, std::vector<std::string> basis = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& basis() const { return basis_; }

  const Rational& c(int k, int i, int j) const { return c_[idx(k, i, j)]; }
  // Sets c^k_{ij} and c^k_{ji} = -c^k_{ij} together.
  void set_c(int k, int i, int j, const Rational& v);

  // First violating quadruple of the Jacobi identity, or nullopt on pass.
  std::optional<std::array<int, 4>> jacobi_violation() const;

  friend bool operator==(const LieAlgebraSC& a, const LieAlgebraSC& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::size_t idx(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }
  int dim_;
  std::vector<std::string> basis_;
  std::vector<Rational> c_;
};

// Cobracket constants d^{jk}_i with delta(e_i) = sum_{j<k} d^{jk}_i e_j ^ e_k,
// stored fully antisymmetric in (j,k).
class Cobracket {
 public:
  explicit Cobracket(int dim);

  int dim() const { return dim_; }
  const Rational& d(int i, int j, int k) const { return d_[idx(i, j, k)]; }
  void set_d(int i, int j, int k, const Rational& v);

  friend bool operator==(const Cobracket& a, const Cobracket& b) {
    return a.dim_ == b.dim_ && a.d_ == b.d_;
  }

 private:
  std::size_t idx(int i, int j, int k) const {
    return static_cast<std::size_t>((i * dim_ + j) * dim_ + k);
  }
  int dim_;
  std::vector<Rational> d_;
};

struct LieBialgebra {
  LieAlgebraSC algebra;
  Cobracket cobracket;

  friend bool operator==(const LieBialgebra& a, const LieBialgebra& b) {
    return a.algebra == b.algebra && a.cobracket == b.cobracket;
  }
};

// Verifies delta([x,y]) = ad_x.delta(y) - ad_y.delta(x) on all basis pairs,
// with ad acting on g (x) g by the Leibniz rule. Returns the first violating
// pair or nullopt.
std::optional<std::array<int, 2>> cocycle_violation(const LieBialgebra& b);

// Dual bialgebra: bracket read off the transposed cobracket, cobracket
// transposed from the bracket. Preconditions: both checks pass.
LieBialgebra dualize(const LieBialgebra& b);

// Exact equality of all constants after two dualizations.
bool double_dual_roundtrip(const LieBialgebra& b);

// The two-dimensional bialgebra with [xi,eta] = eta, delta(xi) = 0,
// delta(eta) = xi ^ eta.
LieBialgebra r2_bialgebra();

}  // namespace pgeom
