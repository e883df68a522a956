#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "baer/error.hpp"
#include "baer/kernels.hpp"
#include "baer/scalar.hpp"

namespace baer {

/// Coordinates on which a result is trusted (empty: all of them).
using Window = std::vector<std::size_t>;

/// Dense row-major matrix over a scalar domain S.
template <class S>
class Matrix {
 public:
  using value_type = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S& fill = S{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const S& one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<S> data() { return data_; }
  std::span<const S> data() const { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out(c, r) = ScalarOps<S>::conj((*this)(r, c));
    return out;
  }

  Matrix column(std::size_t c) const {
    Matrix out(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
    return out;
  }

  /// Principal submatrix on the given coordinates.
  Matrix compress(const std::vector<std::size_t>& idx) const {
    Matrix out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        out(i, j) = (*this)(idx[i], idx[j]);
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      fail(ErrorKind::malformed_element, "matrix product: inner dimensions differ");
    Matrix out(a.rows_, b.cols_);
    if constexpr (std::is_same_v<S, Complex>) {
      kernels::cgemm(a.rows_, a.cols_, b.cols_, a.data_.data(), b.data_.data(),
                     out.data_.data());
    } else {
      for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
          const S& aik = a(i, k);
          if (ScalarOps<S>::is_zero(aik)) continue;
          for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      fail(ErrorKind::malformed_element, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <class S>
Matrix<S> hstack(const std::vector<Matrix<S>>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows && b.cols() != 0)
      fail(ErrorKind::malformed_element, "hstack: row counts differ");
    cols += b.cols();
  }
  Matrix<S> out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c0 + c) = b(r, c);
    c0 += b.cols();
  }
  return out;
}

template <class S>
Matrix<S> vstack(const std::vector<Matrix<S>>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols && b.rows() != 0)
      fail(ErrorKind::malformed_element, "vstack: column counts differ");
    rows += b.rows();
  }
  Matrix<S> out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return out;
}

/// Block-diagonal direct sum.
template <class S>
Matrix<S> direct_sum(const std::vector<Matrix<S>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix<S> out(n, n);
  std::size_t o = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(o + r, o + c) = b(r, c);
    o += b.rows();
  }
  return out;
}

/// Frobenius norm, optionally of the principal compression to a window.
template <class S>
double frobenius(const Matrix<S>& a, const Window& window = {}) {
  if (!window.empty()) return frobenius(a.compress(window));
  if constexpr (std::is_same_v<S, Complex>) {
    return std::sqrt(kernels::cnorm2(a.data()));
  } else {
    double s = 0.0;
    for (const auto& v : a.data()) s += ScalarOps<S>::abs2(v);
    return std::sqrt(s);
  }
}

/// Matrix power by repeated squaring; `one` supplies the multiplicative unit.
template <class S>
Matrix<S> power(const Matrix<S>& a, unsigned n, const S& one) {
  Matrix<S> result = Matrix<S>::identity(a.rows(), one);
  Matrix<S> base = a;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

using RatMatrix = Matrix<Rational>;
using GfMatrix = Matrix<Gf>;
using CMatrix = Matrix<Complex>;

}  // namespace baer
