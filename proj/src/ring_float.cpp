#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <vector>

#include "baer/float_ring.hpp"
#include "ring_impl.hpp"

namespace baer {

namespace {

using EMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMat to_eigen(const CMatrix& a) {
  EMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

template <class Derived>
CMatrix from_eigen(const Eigen::MatrixBase<Derived>& m) {
  CMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

// Singular values at or below eps_rank * max(sigma_max, 1) count as zero;
// the absolute floor keeps numerically-zero inputs at rank 0.
double cutoff(const TolerancePolicy& tol, double sigma_max) {
  return tol.eps_rank * std::max(sigma_max, 1.0);
}

// Columns are picked by singular value, not by position. (BDCSVD in Eigen
// 3.4.0 returned a wrong left basis on block-diagonal projections with many
// equal singular values, so every factorization here is JacobiSVD.)
template <class Derived, class Keep>
CMatrix pick_columns(const Eigen::MatrixBase<Derived>& m, const Eigen::VectorXd& s, Keep keep) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < m.cols(); ++i)
    if (keep(i < s.size() ? s(i) : 0.0)) idx.push_back(i);
  CMatrix out(m.rows(), idx.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < idx.size(); ++k) out(r, k) = m(r, idx[k]);
  return out;
}

double largest(const Eigen::VectorXd& s) { return s.size() ? s.maxCoeff() : 0.0; }

}  // namespace

template <>
ScalarDomain Ring<Complex>::default_domain() { return ScalarDomain::complex_float(); }

template <>
Ring<Complex>::Ring(ScalarDomain domain) : domain_(domain) {
  if (domain_.kind != DomainKind::complex_float)
    fail(ErrorKind::domain_mismatch, "float ring needs a complex-float domain");
  domain_.tolerance.validate();
}

template <>
Complex Ring<Complex>::one() const { return {1.0, 0.0}; }
template <>
Complex Ring<Complex>::from_int(long v) const { return {static_cast<double>(v), 0.0}; }

template <>
CMatrix Ring<Complex>::range_basis(const CMatrix& a) const {
  if (a.cols() == 0 || a.rows() == 0) return CMatrix(a.rows(), 0);
  Eigen::JacobiSVD<EMat> svd(to_eigen(a), Eigen::ComputeThinU);
  const Eigen::VectorXd s = svd.singularValues();
  const double cut = cutoff(tolerance(), largest(s));
  return pick_columns(svd.matrixU(), s, [cut](double v) { return v > cut; });
}

template <>
CMatrix Ring<Complex>::kernel_basis(const CMatrix& a) const {
  const Eigen::Index n = static_cast<Eigen::Index>(a.cols());
  if (n == 0) return CMatrix(0, 0);
  if (a.rows() == 0) return identity(a.cols());
  EMat m = to_eigen(a);
  if (m.rows() > n) {
    // Tall stacks: the R factor carries the same singular values and right vectors.
    Eigen::HouseholderQR<EMat> qr(m);
    m = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  }
  Eigen::JacobiSVD<EMat> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  const double cut = cutoff(tolerance(), largest(s));
  return pick_columns(svd.matrixV(), s, [cut](double v) { return v <= cut; });
}

template <>
Projection<Complex> Ring<Complex>::projection_onto(const CMatrix& basis) const {
  const CMatrix q = range_basis(basis);
  return {q * q.adjoint(), q};
}

template class Ring<Complex>;

// ---- float-ring operations -------------------------------------------------

Projection<Complex> range_projection_numeric(const FloatRing& ring, const CMatrix& a) {
  return ring.projection_onto(a);
}

Projection<Complex> subspace_intersection(const FloatRing& ring, const Projection<Complex>& p,
                                          const Projection<Complex>& q) {
  ring.check_same(p.element, q.element);
  const std::size_t n = p.dim();
  const CMatrix stack =
      vstack<Complex>({ring.identity(n) - p.element, ring.identity(n) - q.element}, n);
  return ring.projection_onto(ring.kernel_basis(stack));
}

bool is_positive_float(const FloatRing& ring, const CMatrix& a) {
  ring.check_square(a);
  const auto& tol = ring.tolerance();
  const double scale = frobenius(a);
  if (ring.residual(a, a.adjoint()) > tol.eps_eq * std::max(scale, 1.0)) return false;
  EMat h = to_eigen(a);
  h = (h + h.adjoint().eval()) * 0.5;
  Eigen::SelfAdjointEigenSolver<EMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol.eps_psd * std::max(scale, 1.0);
}

CMatrix hermitian_sqrt(const CMatrix& a) {
  EMat h = to_eigen(a);
  h = (h + h.adjoint().eval()) * 0.5;
  Eigen::SelfAdjointEigenSolver<EMat> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const EMat v = es.eigenvectors();
  return from_eigen(EMat(v * ev.cast<Complex>().asDiagonal() * v.adjoint()));
}

std::vector<double> singular_values(const CMatrix& a) {
  Eigen::JacobiSVD<EMat> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace baer
