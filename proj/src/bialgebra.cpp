#include "pgeom/bialgebra.hpp"

namespace pgeom {

LieAlgebraSC::LieAlgebraSC(int dim, std::vector<std::string> basis)
    : dim_(dim), basis_(std::move(basis)),
      c_(static_cast<std::size_t>(dim * dim * dim)) {
  if (dim <= 0) throw std::invalid_argument("LieAlgebraSC: dim must be positive");
  if (basis_.empty())
    for (int i = 0; i < dim; ++i) basis_.push_back("e" + std::to_string(i + 1));
  if (static_cast<int>(basis_.size()) != dim)
    throw std::invalid_argument("LieAlgebraSC: basis size != dim");
}

void LieAlgebraSC::set_c(int k, int i, int j, const Rational& v) {
  c_[idx(k, i, j)] = v;
  c_[idx(k, j, i)] = -v;
}

std::optional<std::array<int, 4>> LieAlgebraSC::jacobi_violation() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          Rational sum;
          for (int m = 0; m < dim_; ++m)
            sum += c(m, i, j) * c(l, m, k) + c(m, j, k) * c(l, m, i) +
                   c(m, k, i) * c(l, m, j);
          if (!sum.is_zero()) return std::array<int, 4>{i, j, k, l};
        }
  return std::nullopt;
}

Cobracket::Cobracket(int dim)
    : dim_(dim), d_(static_cast<std::size_t>(dim * dim * dim)) {
  if (dim <= 0) throw std::invalid_argument("Cobracket: dim must be positive");
}

void Cobracket::set_d(int i, int j, int k, const Rational& v) {
  d_[idx(i, j, k)] = v;
  d_[idx(i, k, j)] = -v;
}

namespace {

using Tensor2 = std::vector<std::vector<Rational>>;  // element of g (x) g

Tensor2 zero2(int n) {
  return Tensor2(static_cast<std::size_t>(n),
                 std::vector<Rational>(static_cast<std::size_t>(n)));
}

Tensor2 delta_of(const LieBialgebra& b, int i) {
  int n = b.algebra.dim();
  Tensor2 w = zero2(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          b.cobracket.d(i, j, k);
  return w;
}

// ad_{e_i} on g (x) g by the Leibniz rule.
Tensor2 ad_on_tensor(const LieAlgebraSC& g, int i, const Tensor2& w) {
  int n = g.dim();
  Tensor2 r = zero2(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Rational acc;
      for (int u = 0; u < n; ++u)
        acc += g.c(p, i, u) * w[static_cast<std::size_t>(u)][static_cast<std::size_t>(q)] +
               g.c(q, i, u) * w[static_cast<std::size_t>(p)][static_cast<std::size_t>(u)];
      r[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = acc;
    }
  return r;
}

}  // namespace

std::optional<std::array<int, 2>> cocycle_violation(const LieBialgebra& b) {
  int n = b.algebra.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // delta([e_i,e_j]) componentwise.
      Tensor2 lhs = zero2(n);
      for (int m = 0; m < n; ++m) {
        if (b.algebra.c(m, i, j).is_zero()) continue;
        Tensor2 dm = delta_of(b, m);
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            lhs[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] +=
                b.algebra.c(m, i, j) * dm[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      }
      Tensor2 rhs_i = ad_on_tensor(b.algebra, i, delta_of(b, j));
      Tensor2 rhs_j = ad_on_tensor(b.algebra, j, delta_of(b, i));
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Rational diff =
              lhs[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] -
              rhs_i[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] +
              rhs_j[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
          if (!diff.is_zero()) return std::array<int, 2>{i, j};
        }
    }
  return std::nullopt;
}

LieBialgebra dualize(const LieBialgebra& b) {
  if (b.algebra.jacobi_violation())
    throw std::invalid_argument("dualize: algebra fails Jacobi");
  if (cocycle_violation(b))
    throw std::invalid_argument("dualize: cobracket fails the 1-cocycle condition");

  int n = b.algebra.dim();
  std::vector<std::string> dual_basis;
  for (const auto& name : b.algebra.basis()) dual_basis.push_back(name + "*");

  // [e^j*, e^k*] = sum_i d^{jk}_i e^i*; dual cobracket transposes the bracket.
  LieAlgebraSC dual_alg(n, dual_basis);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        dual_alg.set_c(i, j, k, b.cobracket.d(i, j, k));

  Cobracket dual_cob(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        dual_cob.set_d(i, j, k, b.algebra.c(i, j, k));

  return {std::move(dual_alg), std::move(dual_cob)};
}

bool double_dual_roundtrip(const LieBialgebra& b) {
  LieBialgebra dd = dualize(dualize(b));
  // Basis names gain stars; compare constants only.
  return dd.algebra.dim() == b.algebra.dim() &&
         dd.cobracket == b.cobracket &&
         [&] {
           for (int k = 0; k < b.algebra.dim(); ++k)
             for (int i = 0; i < b.algebra.dim(); ++i)
               for (int j = 0; j < b.algebra.dim(); ++j)
                 if (dd.algebra.c(k, i, j) != b.algebra.c(k, i, j)) return false;
           return true;
         }();
}

LieBialgebra r2_bialgebra() {
  LieAlgebraSC g(2, {"xi", "eta"});
  g.set_c(1, 0, 1, Rational(1));  // [xi,eta] = eta
  Cobracket d(2);
  d.set_d(1, 0, 1, Rational(1));  // delta(eta) = xi ^ eta
  return {std::move(g), std::move(d)};
}

}  // namespace pgeom
