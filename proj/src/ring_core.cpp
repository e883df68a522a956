#include "baer/exact_rings.hpp"
#include "baer/ring.hpp"

namespace baer {

std::vector<std::string> ElementClass::names() const {
  std::vector<std::string> out;
  if (projection) out.emplace_back("projection");
  if (partial_isometry) out.emplace_back("partial-isometry");
  if (isometry) out.emplace_back("isometry");
  if (co_isometry) out.emplace_back("co-isometry");
  if (unitary) out.emplace_back("unitary");
  if (power_partial_isometry) out.emplace_back("power-partial-isometry");
  if (contraction) out.emplace_back("contraction");
  return out;
}

template <class S>
bool is_partial_isometry(const Ring<S>& ring, const Matrix<S>& a, const Window& w) {
  return ring.equal(a * a.adjoint() * a, a, w);
}

template <class S>
bool is_isometry(const Ring<S>& ring, const Matrix<S>& a, const Window& w) {
  return ring.equal(a.adjoint() * a, ring.identity(a.rows()), w);
}

template <class S>
bool is_ppi(const Ring<S>& ring, const Matrix<S>& a, unsigned n_max, const Window& w) {
  Matrix<S> pw = a;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (!is_partial_isometry(ring, pw, w)) return false;
    if (n < n_max) pw = pw * a;
  }
  return true;
}

template <class S>
bool is_contraction(const Ring<S>& ring, const Matrix<S>& x) {
  const Matrix<S> one = ring.identity(x.rows());
  return is_positive(ring, one - x.adjoint() * x) && is_positive(ring, one - x * x.adjoint());
}

template <class S>
ElementClass classify(const Ring<S>& ring, const Matrix<S>& a, unsigned n_max, const Window& w) {
  ring.check_square(a);
  if (n_max == 0) fail(ErrorKind::precondition, "n_max must be positive");
  ElementClass c;
  const Matrix<S> one = ring.identity(a.rows());
  c.projection = ring.equal(a, a.adjoint(), w) && ring.equal(a * a, a, w);
  c.partial_isometry = is_partial_isometry(ring, a, w);
  c.isometry = ring.equal(a.adjoint() * a, one, w);
  c.co_isometry = ring.equal(a * a.adjoint(), one, w);
  c.unitary = c.isometry && c.co_isometry;
  c.power_partial_isometry = c.partial_isometry && is_ppi(ring, a, n_max, w);
  c.contraction = is_contraction(ring, a);
  return c;
}

template <class S>
Projection<S> left_projection(const Ring<S>& ring, const Matrix<S>& a) {
  ring.check_square(a);
  return ring.projection_onto(a);
}

template <class S>
bool proj_leq(const Ring<S>& ring, const Projection<S>& p, const Projection<S>& q, const Window& w) {
  ring.check_same(p.element, q.element);
  return ring.equal(p.element * q.element, p.element, w);
}

template <class S>
Projection<S> proj_inf(const Ring<S>& ring, const std::vector<Projection<S>>& family) {
  if (family.empty()) fail(ErrorKind::empty_family, "infimum of an empty family");
  if (family.size() == 1) return family.front();
  const std::size_t n = family.front().dim();
  std::vector<Matrix<S>> comps;
  for (const auto& p : family) {
    ring.check_same(p.element, family.front().element);
    comps.push_back(ring.identity(n) - p.element);
  }
  return ring.projection_onto(ring.kernel_basis(vstack(comps, n)));
}

template <class S>
Projection<S> proj_sup(const Ring<S>& ring, const std::vector<Projection<S>>& family) {
  if (family.empty()) fail(ErrorKind::empty_family, "supremum of an empty family");
  const std::size_t n = family.front().dim();
  std::vector<Matrix<S>> bases;
  for (const auto& p : family) {
    ring.check_same(p.element, family.front().element);
    bases.push_back(p.range_basis);
  }
  return ring.projection_onto(hstack(bases, n));
}

template <class S>
bool is_invariant(const Ring<S>& ring, const Projection<S>& p, const Matrix<S>& x, const Window& w) {
  ring.check_same(p.element, x);
  const Matrix<S> xp = x * p.element;
  return ring.equal(xp, p.element * xp, w);
}

template <class S>
bool commutes(const Ring<S>& ring, const Matrix<S>& a, const Matrix<S>& b, const Window& w) {
  ring.check_same(a, b);
  return ring.equal(a * b, b * a, w);
}

template <class S>
bool doubly_commutes(const Ring<S>& ring, const Matrix<S>& a, const Matrix<S>& b, const Window& w) {
  const Matrix<S> bs = b.adjoint();
  return commutes(ring, a, b, w) && ring.equal(a * bs, bs * a, w);
}

template <class S>
Projection<S> right_annihilator_projection(const Ring<S>& ring, const std::vector<Matrix<S>>& family) {
  if (family.empty()) fail(ErrorKind::empty_family, "annihilator of an empty family");
  const std::size_t n = family.front().cols();
  for (const auto& s : family) ring.check_square(s);
  const Projection<S> p = ring.projection_onto(ring.kernel_basis(vstack(family, n)));
  for (const auto& s : family)
    if (!ring.is_zero(s * p.element))
      fail(ErrorKind::internal_inconsistency, "annihilator projection does not annihilate");
  return p;
}

template <class S>
bool key_identity_check(const Ring<S>& ring, const Matrix<S>& x, const Projection<S>& q, const Window& w) {
  if (!is_isometry(ring, x, w)) fail(ErrorKind::precondition, "key identity needs an isometry");
  const Matrix<S> xq = x * q.element;
  return ring.equal(left_projection(ring, xq).element, xq * x.adjoint(), w);
}

template <class S>
bool is_basis(const Ring<S>& ring, const std::vector<Projection<S>>& members, const Window& w) {
  if (members.empty()) return false;
  const std::size_t n = members.front().dim();
  Matrix<S> sum = ring.zeros(n);
  for (std::size_t i = 0; i < members.size(); ++i) {
    sum += members[i].element;
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!ring.is_zero(members[i].element * members[j].element, w)) return false;
  }
  return ring.equal(sum, ring.identity(n), w);
}

#define BAER_INSTANTIATE(S)                                                                     \
  template bool is_partial_isometry(const Ring<S>&, const Matrix<S>&, const Window&);          \
  template bool is_isometry(const Ring<S>&, const Matrix<S>&, const Window&);                  \
  template bool is_ppi(const Ring<S>&, const Matrix<S>&, unsigned, const Window&);             \
  template bool is_contraction(const Ring<S>&, const Matrix<S>&);                              \
  template ElementClass classify(const Ring<S>&, const Matrix<S>&, unsigned, const Window&);   \
  template Projection<S> left_projection(const Ring<S>&, const Matrix<S>&);                    \
  template bool proj_leq(const Ring<S>&, const Projection<S>&, const Projection<S>&,           \
                         const Window&);                                                       \
  template Projection<S> proj_inf(const Ring<S>&, const std::vector<Projection<S>>&);          \
  template Projection<S> proj_sup(const Ring<S>&, const std::vector<Projection<S>>&);          \
  template bool is_invariant(const Ring<S>&, const Projection<S>&, const Matrix<S>&,           \
                             const Window&);                                                   \
  template bool commutes(const Ring<S>&, const Matrix<S>&, const Matrix<S>&, const Window&);   \
  template bool doubly_commutes(const Ring<S>&, const Matrix<S>&, const Matrix<S>&,            \
                                const Window&);                                                \
  template Projection<S> right_annihilator_projection(const Ring<S>&,                          \
                                                      const std::vector<Matrix<S>>&);          \
  template bool key_identity_check(const Ring<S>&, const Matrix<S>&, const Projection<S>&,     \
                                   const Window&);                                             \
  template bool is_basis(const Ring<S>&, const std::vector<Projection<S>>&, const Window&);

BAER_INSTANTIATE(Rational)
BAER_INSTANTIATE(Gf)
BAER_INSTANTIATE(Complex)

}  // namespace baer
