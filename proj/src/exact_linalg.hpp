#pragma once

// Gauss-Jordan over an exact field (mpq or F_p).

#include <utility>
#include <vector>

#include "baer/error.hpp"
#include "baer/matrix.hpp"

namespace baer::detail {

template <class S>
struct Rref {
  Matrix<S> r;
  std::vector<std::size_t> pivots;  // pivot column of row i
};

template <class S>
Rref<S> rref(Matrix<S> a) {
  Rref<S> out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && ScalarOps<S>::is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    const S inv = ScalarOps<S>::inverse(a(row, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || ScalarOps<S>::is_zero(a(i, c))) continue;
      const S f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.r = std::move(a);
  return out;
}

/// Columns of the null space read off a reduced row echelon form.
template <class S>
Matrix<S> kernel_from_rref(const Rref<S>& e, const S& one) {
  const std::size_t n = e.r.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<S> k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = one;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.r(r, free[f]);
  }
  return k;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a, const S& one) {
  const std::size_t n = a.rows();
  Matrix<S> aug = hstack<S>({a, Matrix<S>::identity(n, one)}, n);
  Rref<S> e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
    fail(ErrorKind::internal_inconsistency, "singular Gram matrix");
  Matrix<S> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.r(i, n + j);
  return inv;
}

template <class S>
Matrix<S> select_columns(const Matrix<S>& a, const std::vector<std::size_t>& cols) {
  Matrix<S> out(a.rows(), cols.size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = a(r, cols[c]);
  return out;
}

}  // namespace baer::detail
