#pragma once

// Members of Ring<S> that do not depend on how ranks are decided.

#include <algorithm>
#include <cmath>

#include "baer/ring.hpp"

namespace baer {

template <class S>
double Ring<S>::residual(const Matrix<S>& a, const Matrix<S>& b, const Window& w) const {
  check_same(a, b);
  if constexpr (std::is_same_v<S, Complex>) {
    if (w.empty()) return std::sqrt(kernels::cdist2(a.data(), b.data()));
  }
  return frobenius(a - b, w);
}

template <class S>
bool Ring<S>::equal(const Matrix<S>& a, const Matrix<S>& b, const Window& w) const {
  check_same(a, b);
  if constexpr (is_exact_v<S>) {
    if (w.empty()) return a == b;
    return a.compress(w) == b.compress(w);
  } else {
    const double n = static_cast<double>(w.empty() ? a.rows() : w.size());
    return residual(a, b, w) <= tolerance().eps_eq * std::max(n, 1.0);
  }
}

template <class S>
bool Ring<S>::is_zero(const Matrix<S>& a, const Window& w) const {
  if constexpr (is_exact_v<S>) {
    const Matrix<S> c = w.empty() ? a : a.compress(w);
    for (const auto& v : c.data())
      if (!ScalarOps<S>::is_zero(v)) return false;
    return true;
  } else {
    const double n = static_cast<double>(w.empty() ? a.rows() : w.size());
    return frobenius(a, w) <= tolerance().eps_eq * std::max(n, 1.0);
  }
}

template <class S>
Projection<S> Ring<S>::as_projection(const Matrix<S>& p) const {
  check_square(p);
  if (!equal(p, p.adjoint()) || !equal(p * p, p))
    fail(ErrorKind::precondition, "element is not a projection");
  return {p, range_basis(p)};
}

template <class S>
Projection<S> Ring<S>::zero_projection(std::size_t n) const {
  return {zeros(n), Matrix<S>(n, 0)};
}

template <class S>
Projection<S> Ring<S>::identity_projection(std::size_t n) const {
  return {identity(n), identity(n)};
}

template <class S>
Projection<S> Ring<S>::complement(const Projection<S>& p) const {
  return {identity(p.dim()) - p.element, kernel_basis(p.element)};
}

template <class S>
void Ring<S>::check_square(const Matrix<S>& a) const {
  if (!a.is_square() || a.rows() == 0)
    fail(ErrorKind::malformed_element, "element must be a nonempty square matrix");
  if (domain_.kind == DomainKind::finite_field && domain_.dim != 0 && a.rows() != domain_.dim)
    fail(ErrorKind::domain_mismatch, "element size differs from the ring dimension");
}

template <class S>
void Ring<S>::check_same(const Matrix<S>& a, const Matrix<S>& b) const {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::domain_mismatch, "elements of different sizes");
}

}  // namespace baer
