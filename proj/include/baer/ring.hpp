#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "baer/domain.hpp"
#include "baer/matrix.hpp"

namespace baer {

class ConeTable;

/// Self-adjoint idempotent together with a basis of its range.
/// Over complex floats the basis columns are orthonormal; over exact
/// domains they are merely independent.
template <class S>
struct Projection {
  Matrix<S> element;
  Matrix<S> range_basis;

  std::size_t dim() const { return element.rows(); }
  std::size_t rank() const { return range_basis.cols(); }
};

template <class S>
struct LabeledProjection {
  std::string label;
  Projection<S> projection;
};

template <class S>
using ProjectionBasis = std::vector<LabeledProjection<S>>;

/// Matrix ring M_n over one scalar domain. Owns the domain-specific linear
/// algebra (ranks, ranges, kernels, orthogonal projectors) and the equality
/// rule: exact comparison, or ||a - b||_F <= eps_eq * n over complex floats.
template <class S>
class Ring {
 public:
  explicit Ring(ScalarDomain domain = default_domain());

  static ScalarDomain default_domain();

  const ScalarDomain& domain() const { return domain_; }
  const TolerancePolicy& tolerance() const { return domain_.tolerance; }

  S one() const;
  S from_int(long v) const;
  Matrix<S> identity(std::size_t n) const { return Matrix<S>::identity(n, one()); }
  Matrix<S> zeros(std::size_t n) const { return Matrix<S>(n, n); }

  /// Frobenius norm of a - b, compressed to the window when one is given.
  double residual(const Matrix<S>& a, const Matrix<S>& b, const Window& w = {}) const;
  double norm(const Matrix<S>& a, const Window& w = {}) const { return frobenius(a, w); }
  bool equal(const Matrix<S>& a, const Matrix<S>& b, const Window& w = {}) const;
  bool is_zero(const Matrix<S>& a, const Window& w = {}) const;

  /// Independent columns spanning the column space (orthonormal for floats).
  Matrix<S> range_basis(const Matrix<S>& a) const;
  /// Independent columns spanning the null space.
  Matrix<S> kernel_basis(const Matrix<S>& a) const;
  std::size_t rank(const Matrix<S>& a) const { return range_basis(a).cols(); }

  /// Orthogonal projection onto the span of the columns of `basis` (n rows).
  Projection<S> projection_onto(const Matrix<S>& basis) const;
  /// Wraps a matrix already known to be a projection; throws if it is not.
  Projection<S> as_projection(const Matrix<S>& p) const;
  Projection<S> zero_projection(std::size_t n) const;
  Projection<S> identity_projection(std::size_t n) const;
  Projection<S> complement(const Projection<S>& p) const;

  /// Positive cone (finite fields within the enumeration guard), else null.
  const ConeTable* cone() const { return cone_.get(); }

  void check_square(const Matrix<S>& a) const;
  void check_same(const Matrix<S>& a, const Matrix<S>& b) const;

 private:
  ScalarDomain domain_;
  std::shared_ptr<const ConeTable> cone_;
};

using RationalRing = Ring<Rational>;
using GfRing = Ring<Gf>;
using FloatRing = Ring<Complex>;

// ---- classification -------------------------------------------------------

struct ElementClass {
  bool projection = false;
  bool partial_isometry = false;
  bool isometry = false;
  bool co_isometry = false;
  bool unitary = false;
  bool power_partial_isometry = false;
  bool contraction = false;

  /// Names of the set flags, in declaration order.
  std::vector<std::string> names() const;
};

template <class S>
ElementClass classify(const Ring<S>& ring, const Matrix<S>& a, unsigned n_max,
                      const Window& w = {});

template <class S>
bool is_partial_isometry(const Ring<S>& ring, const Matrix<S>& a, const Window& w = {});
template <class S>
bool is_isometry(const Ring<S>& ring, const Matrix<S>& a, const Window& w = {});
template <class S>
bool is_ppi(const Ring<S>& ring, const Matrix<S>& a, unsigned n_max, const Window& w = {});

/// 1 - x*x and 1 - xx* both positive.
template <class S>
bool is_contraction(const Ring<S>& ring, const Matrix<S>& x);

// ---- projection lattice ---------------------------------------------------

/// [a]: range projection.
template <class S>
Projection<S> left_projection(const Ring<S>& ring, const Matrix<S>& a);

/// p <= q, i.e. pq = p.
template <class S>
bool proj_leq(const Ring<S>& ring, const Projection<S>& p, const Projection<S>& q,
              const Window& w = {});

template <class S>
Projection<S> proj_inf(const Ring<S>& ring, const std::vector<Projection<S>>& family);

template <class S>
Projection<S> proj_sup(const Ring<S>& ring, const std::vector<Projection<S>>& family);

/// xp = pxp.
template <class S>
bool is_invariant(const Ring<S>& ring, const Projection<S>& p, const Matrix<S>& x,
                  const Window& w = {});

template <class S>
bool commutes(const Ring<S>& ring, const Matrix<S>& a, const Matrix<S>& b,
              const Window& w = {});

/// ab = ba and ab* = b*a.
template <class S>
bool doubly_commutes(const Ring<S>& ring, const Matrix<S>& a, const Matrix<S>& b,
                     const Window& w = {});

/// Projection onto the common kernel of every member of `family`.
template <class S>
Projection<S> right_annihilator_projection(const Ring<S>& ring,
                                           const std::vector<Matrix<S>>& family);

/// [xq] == xqx* for an isometry x.
template <class S>
bool key_identity_check(const Ring<S>& ring, const Matrix<S>& x, const Projection<S>& q,
                        const Window& w = {});

/// Pairwise orthogonal and summing to 1.
template <class S>
bool is_basis(const Ring<S>& ring, const std::vector<Projection<S>>& members,
              const Window& w = {});

}  // namespace baer
