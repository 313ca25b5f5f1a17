#ifndef HCC_SPARSE_HPP
#define HCC_SPARSE_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hcc/scalar.hpp"

namespace hcc {

/// Sparse matrix over the Gaussian rationals. Zero entries are never stored.
class SparseMatrix {
public:
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Scalar& v) {
    check(r, c);
    if (v.is_zero())
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }
  void add(std::size_t r, std::size_t c, const Scalar& v) {
    check(r, c);
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
      if (!v.is_zero()) entries_[{r, c}] = v;
      return;
    }
    it->second += v;
    if (it->second.is_zero()) entries_.erase(it);
  }
  Scalar get(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Scalar() : it->second;
  }
  std::size_t nnz() const { return entries_.size(); }

  const std::map<std::pair<std::size_t, std::size_t>, Scalar>& entries() const {
    return entries_;
  }

  std::vector<std::vector<Scalar>> dense() const {
    std::vector<std::vector<Scalar>> m(rows_, std::vector<Scalar>(cols_));
    for (const auto& [rc, v] : entries_) m[rc.first][rc.second] = v;
    return m;
  }

private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix index");
  }

  std::size_t rows_, cols_;
  std::map<std::pair<std::size_t, std::size_t>, Scalar> entries_;
};

namespace detail {

/// Clears denominators row by row so Bareiss works on Gaussian integers.
inline void scale_rows_integral(std::vector<std::vector<Scalar>>& m) {
  for (auto& row : m) {
    mpz_class l(1);
    for (const Scalar& s : row) {
      mpz_class d1 = s.re().get_den(), d2 = s.im().get_den();
      mpz_class g;
      mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), d1.get_mpz_t());
      mpz_lcm(l.get_mpz_t(), g.get_mpz_t(), d2.get_mpz_t());
    }
    if (l == 1) continue;
    Scalar f{mpq_class(l), mpq_class(0)};
    for (Scalar& s : row) s *= f;
  }
}

}  // namespace detail

/// Exact rank by fraction-free (Bareiss) elimination. Rows are rescaled to
/// Gaussian-integer entries first; every division in the sweep is exact, so
/// intermediate entries stay integral and bounded by minor determinants.
inline std::size_t rank(const SparseMatrix& mat) {
  auto m = mat.dense();
  const std::size_t nr = mat.rows(), nc = mat.cols();
  detail::scale_rows_integral(m);

  Scalar prev = Scalar::one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == nr) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = Scalar();
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

/// Basis of the right kernel, computed by rational Gauss-Jordan reduction.
/// This is an independent elimination route from rank(); the pair is
/// cross-checked by the rank-nullity tests.
inline std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& mat) {
  auto m = mat.dense();
  const std::size_t nr = mat.rows(), nc = mat.cols();

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == nr) continue;
    std::swap(m[r], m[piv]);
    Scalar inv = m[r][c].inverse();
    for (std::size_t j = c; j < nc; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < nc; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free_c = 0; free_c < nc; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<Scalar> v(nc);
    v[free_c] = Scalar::one();
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -m[i][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Matrix-vector product for kernel verification.
inline std::vector<Scalar> mat_apply(const SparseMatrix& m, const std::vector<Scalar>& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("mat_apply: size mismatch");
  std::vector<Scalar> out(m.rows());
  for (const auto& [rc, a] : m.entries()) out[rc.first] += a * v[rc.second];
  return out;
}

}  // namespace hcc

#endif
