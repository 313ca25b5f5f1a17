#include <catch2/catch_amalgamated.hpp>

#include "hcc/scalar.hpp"
#include "hcc/sparse.hpp"

using namespace hcc;

namespace {

// Independent oracle: plain rational elimination with full pivoting
// (any nonzero entry of the remaining submatrix may serve as pivot).
std::size_t rank_full_pivot(const SparseMatrix& mat) {
  auto m = mat.dense();
  std::size_t nr = mat.rows(), nc = mat.cols();
  std::vector<bool> col_used(nc, false);
  std::size_t r = 0;
  while (r < nr) {
    std::size_t pi = nr, pj = nc;
    for (std::size_t i = r; i < nr && pi == nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        if (!col_used[j] && !m[i][j].is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == nr) break;
    std::swap(m[r], m[pi]);
    col_used[pj] = true;
    Scalar inv = m[r][pj].inverse();
    for (std::size_t j = 0; j < nc; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || m[i][pj].is_zero()) continue;
      Scalar f = m[i][pj];
      for (std::size_t j = 0; j < nc; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("scalar field axioms on random values") {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    Scalar a = rng.small_gaussian(), b = rng.small_gaussian(), c = rng.small_gaussian();
    REQUIRE((a + b) * c == a * c + b * c);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    if (!a.is_zero()) {
      REQUIRE(a * a.inverse() == Scalar::one());
    }
  }
  REQUIRE(Scalar::i() * Scalar::i() == -Scalar::one());
  REQUIRE(Scalar(2, 4) == Scalar(1, 2));
}

TEST_CASE("rank of simple matrices") {
  SparseMatrix z(3, 3);
  REQUIRE(rank(z) == 0);

  SparseMatrix id2(2, 2);
  id2.set(0, 0, Scalar::one());
  id2.set(1, 1, Scalar::one());
  REQUIRE(rank(id2) == 2);
  REQUIRE(kernel_basis(id2).empty());

  SparseMatrix z2(2, 2);
  auto kb = kernel_basis(z2);
  REQUIRE(kb.size() == 2);
}

TEST_CASE("rank equals full-pivot oracle and rank-nullity holds") {
  Rng rng(99);
  for (int t = 0; t < 60; ++t) {
    std::size_t nr = 1 + rng.below(7), nc = 1 + rng.below(7);
    SparseMatrix m(nr, nc);
    std::size_t fill = rng.below(nr * nc + 1);
    for (std::size_t k = 0; k < fill; ++k)
      m.set(rng.below(nr), rng.below(nc), rng.small_gaussian());
    std::size_t rk = rank(m);
    REQUIRE(rk == rank_full_pivot(m));
    auto kb = kernel_basis(m);
    REQUIRE(rk + kb.size() == nc);
    for (const auto& v : kb) {
      auto mv = mat_apply(m, v);
      for (const auto& x : mv) REQUIRE(x.is_zero());
    }
    // Kernel vectors are linearly independent: stack them as rows.
    if (!kb.empty()) {
      SparseMatrix kmat(kb.size(), nc);
      for (std::size_t i = 0; i < kb.size(); ++i)
        for (std::size_t j = 0; j < nc; ++j) kmat.set(i, j, kb[i][j]);
      REQUIRE(rank(kmat) == kb.size());
    }
  }
}

TEST_CASE("bareiss handles dense rational entries") {
  // A 4x4 Hilbert-like matrix with an added complex row; exact rank 4.
  SparseMatrix m(4, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      m.set(i, j, Scalar(1, static_cast<long>(i + j + 1)));
  for (std::size_t j = 0; j < 4; ++j)
    m.set(3, j, Scalar(1, static_cast<long>(j + 1)) * Scalar::i());
  // Row 3 is i * row 0, so the rank drops to 3.
  REQUIRE(rank(m) == 3);
  REQUIRE(kernel_basis(m).size() == 1);
}
