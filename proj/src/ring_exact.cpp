#include <numeric>

#include "baer/exact_rings.hpp"
#include "exact_linalg.hpp"
#include "ring_impl.hpp"

namespace baer {

namespace {

// Fraction-free Gauss-Jordan on the integer matrix obtained by clearing each
// row's denominators (row scaling keeps column dependencies and the kernel).
// Afterwards every pivot equals `det` and pivot columns are det * e_i.
struct FfEchelon {
  std::vector<std::vector<mpz_class>> rows;
  std::vector<std::size_t> pivots;
  mpz_class det = 1;
};

FfEchelon ff_reduce(const RatMatrix& a) {
  FfEchelon e;
  const std::size_t m = a.rows(), n = a.cols();
  e.rows.assign(m, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) e.rows[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }

  mpz_class prev = 1, q, r;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && sgn(e.rows[p][c]) == 0) ++p;
    if (p == m) continue;
    std::swap(e.rows[p], e.rows[row]);
    const mpz_class piv = e.rows[row][c];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const mpz_class f = e.rows[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        q = piv * e.rows[i][j] - f * e.rows[row][j];
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), prev.get_mpz_t());
        if (sgn(r) != 0) fail(ErrorKind::internal_inconsistency, "fraction-free step not exact");
        e.rows[i][j] = q;
      }
    }
    prev = piv;
    e.pivots.push_back(c);
    ++row;
  }
  e.det = prev;
  return e;
}

template <class S>
Projection<S> exact_projector(const Ring<S>& ring, const Matrix<S>& basis) {
  const std::size_t n = basis.rows();
  const Matrix<S> b = ring.range_basis(basis);
  if (b.cols() == 0) return ring.zero_projection(n);
  const Matrix<S> bt = b.adjoint();
  // Gram matrix is invertible: rationals are positive definite, and a GF ring
  // is only built when the form sum v_i^2 is anisotropic.
  const Matrix<S> p = b * detail::inverse(bt * b, ring.one()) * bt;
  return {p, b};
}

}  // namespace

// ---- rationals -------------------------------------------------------------

template <>
ScalarDomain Ring<Rational>::default_domain() { return ScalarDomain::rational(); }

template <>
Ring<Rational>::Ring(ScalarDomain domain) : domain_(domain) {
  if (domain_.kind != DomainKind::exact_rational)
    fail(ErrorKind::domain_mismatch, "rational ring needs an exact-rational domain");
}

template <>
Rational Ring<Rational>::one() const { return Rational(1); }
template <>
Rational Ring<Rational>::from_int(long v) const { return Rational(v); }

template <>
Matrix<Rational> Ring<Rational>::range_basis(const Matrix<Rational>& a) const {
  if (a.cols() == 0) return Matrix<Rational>(a.rows(), 0);
  return detail::select_columns(a, ff_reduce(a).pivots);
}

template <>
Matrix<Rational> Ring<Rational>::kernel_basis(const Matrix<Rational>& a) const {
  const std::size_t n = a.cols();
  const FfEchelon e = ff_reduce(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<Rational> k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    std::vector<mpz_class> v(n);
    v[free[f]] = e.det;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][free[f]];
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) k(i, f) = Rational(v[i] / g);
  }
  return k;
}

template <>
Projection<Rational> Ring<Rational>::projection_onto(const Matrix<Rational>& basis) const {
  return exact_projector(*this, basis);
}

// ---- finite fields ---------------------------------------------------------

template <>
ScalarDomain Ring<Gf>::default_domain() { return construct_gf_ring(3, 2); }

template <>
Ring<Gf>::Ring(ScalarDomain domain) : domain_(domain) {
  if (domain_.kind != DomainKind::finite_field)
    fail(ErrorKind::domain_mismatch, "GF ring needs a finite-field domain");
  domain_ = construct_gf_ring(domain.prime, domain.dim);
  std::uint64_t size = 1;
  bool within = true;
  for (std::size_t i = 0; i < domain_.dim * domain_.dim && within; ++i) {
    size *= domain_.prime;
    within = size <= kConeGuard;
  }
  if (within) cone_ = std::make_shared<const ConeTable>(domain_.prime, domain_.dim);
}

template <>
Gf Ring<Gf>::one() const { return Gf(1, domain_.prime); }
template <>
Gf Ring<Gf>::from_int(long v) const { return Gf(v, domain_.prime); }

template <>
Matrix<Gf> Ring<Gf>::range_basis(const Matrix<Gf>& a) const {
  if (a.cols() == 0) return Matrix<Gf>(a.rows(), 0);
  return detail::select_columns(a, detail::rref(a).pivots);
}

template <>
Matrix<Gf> Ring<Gf>::kernel_basis(const Matrix<Gf>& a) const {
  return detail::kernel_from_rref(detail::rref(a), one());
}

template <>
Projection<Gf> Ring<Gf>::projection_onto(const Matrix<Gf>& basis) const {
  return exact_projector(*this, basis);
}

template class Ring<Rational>;
template class Ring<Gf>;

}  // namespace baer
