#include "baer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "baer/error.hpp"
#include "baer/ring.hpp"

namespace baer::oracle {

namespace {

using Vec = RatMatrix;  // column

// Plain Gauss-Jordan over Q; kernel basis as columns.
RatMatrix kernel(RatMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    const mpq_class inv = 1 / a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const mpq_class f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  RatMatrix k(cols, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) k(pivot_col[i], f) = -a(i, free[f]);
  }
  return k;
}

RatMatrix stack(const std::vector<RatMatrix>& blocks) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  RatMatrix out(rows, blocks.front().cols());
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(at + i, j) = b(i, j);
    at += b.rows();
  }
  return out;
}

RatMatrix transpose(const RatMatrix& a) { return a.adjoint(); }

mpq_class dot(const Vec& a, const Vec& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, 0) * b(i, 0);
  return s;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.data().begin(), v.data().end(), [](const mpq_class& q) { return q == 0; });
}

/// Orthogonal (unnormalized) vectors spanning the columns of `span`, each made
/// orthogonal to `against` first.
std::vector<Vec> gram_schmidt(const RatMatrix& span, std::vector<Vec> against = {}) {
  std::vector<Vec> out;
  for (std::size_t c = 0; c < span.cols(); ++c) {
    Vec v = span.column(c);
    for (const auto& u : against) v -= u * (dot(u, v) / dot(u, u));
    if (is_zero_vec(v)) continue;
    against.push_back(v);
    out.push_back(v);
  }
  return out;
}

RatMatrix projector(const std::vector<Vec>& orthogonal, std::size_t n) {
  RatMatrix p(n, n);
  for (const auto& v : orthogonal) p += v * transpose(v) * (1 / dot(v, v));
  return p;
}

/// Largest subspace of span(B) left invariant by every op.
RatMatrix invariant_core(RatMatrix b, const std::vector<RatMatrix>& ops) {
  for (;;) {
    if (b.cols() == 0) return b;
    const RatMatrix comp = kernel(transpose(b));  // columns spanning the complement
    if (comp.cols() == 0) return b;
    std::vector<RatMatrix> rows;
    for (const auto& a : ops) rows.push_back(transpose(comp) * a * b);
    const RatMatrix c = kernel(stack(rows));
    if (c.cols() == b.cols()) return b;
    b = b * c;
  }
}

RatMatrix identity(std::size_t n) { return RatMatrix::identity(n, mpq_class(1)); }

}  // namespace

RatMatrix brute_unitary_part(const RatMatrix& x) {
  const std::size_t n = x.rows();
  if (n != x.cols()) fail(ErrorKind::malformed_element, "brute_unitary_part: element is not square");
  if (n > kUnitaryDimGuard)
    fail(ErrorKind::dim_guard, "brute_unitary_part: dim " + std::to_string(n) + " exceeds " +
                                   std::to_string(kUnitaryDimGuard));
  const RatMatrix xt = transpose(x), one = identity(n);
  std::vector<RatMatrix> rows;
  RatMatrix xn = one, xtn = one;
  for (std::size_t k = 1; k <= n; ++k) {
    xn = xn * x;
    xtn = xtn * xt;
    rows.push_back(one - xtn * xn);
    rows.push_back(one - xn * xtn);
  }
  const RatMatrix core = invariant_core(kernel(stack(rows)), {x, xt});
  return projector(gram_schmidt(core), n);
}

HwClassification brute_hw_classify(const RatMatrix& x) {
  const std::size_t n = x.rows();
  if (n != x.cols()) fail(ErrorKind::malformed_element, "brute_hw_classify: element is not square");
  if (n > kHwDimGuard)
    fail(ErrorKind::dim_guard,
         "brute_hw_classify: dim " + std::to_string(n) + " exceeds " + std::to_string(kHwDimGuard));
  const RatMatrix xt = transpose(x);
  HwClassification out;
  out.pu = brute_unitary_part(x);
  out.ps = RatMatrix(n, n);
  out.pb = RatMatrix(n, n);

  auto anomaly = [](const std::string& what) { fail(ErrorKind::structural_anomaly, "brute_hw_classify: " + what); };

  // Chain heads of length exactly k: Z_k ⊖ Z_(k-1), Z_k = ker P_U ∩ ker x* ∩ ker x^k.
  std::vector<Vec> heads_so_far;
  RatMatrix xk = identity(n);
  std::vector<Vec> all_vectors;
  for (std::size_t k = 1; k <= n; ++k) {
    xk = xk * x;
    const RatMatrix z = kernel(stack({out.pu, xt, xk}));
    for (const auto& v : gram_schmidt(z, heads_so_far)) {
      heads_so_far.push_back(v);
      Chain ch;
      Vec w = v;
      for (std::size_t j = 0; j < k; ++j) {
        ch.vectors.push_back(w);
        w = x * w;
      }
      if (!is_zero_vec(w)) anomaly("chain does not terminate");
      out.chains.push_back(std::move(ch));
    }
  }

  // Chain relations: x* v = 0 at the head, x* x^j v = x^(j-1) v, equal norms.
  for (const auto& ch : out.chains) {
    if (!is_zero_vec(xt * ch.vectors.front())) anomaly("chain head is not in ker x*");
    const mpq_class nrm = dot(ch.vectors.front(), ch.vectors.front());
    for (std::size_t j = 1; j < ch.length(); ++j) {
      if (!(xt * ch.vectors[j] == ch.vectors[j - 1])) anomaly("x* does not step back along the chain");
      if (dot(ch.vectors[j], ch.vectors[j]) != nrm) anomaly("chain norms differ");
    }
    for (const auto& v : ch.vectors) all_vectors.push_back(v);
  }
  for (std::size_t i = 0; i < all_vectors.size(); ++i) {
    if (!is_zero_vec(out.pu * all_vectors[i])) anomaly("chain meets the unitary part");
    for (std::size_t j = i + 1; j < all_vectors.size(); ++j)
      if (dot(all_vectors[i], all_vectors[j]) != 0) anomaly("chain vectors are not orthogonal");
  }
  out.pt = projector(all_vectors, n);
  if (!(out.pt + out.pu == identity(n))) anomaly("chains do not span the complement of the unitary part");
  return out;
}

double ConvergenceReport::max_disagreement() const {
  double m = 0.0;
  for (const auto& s : steps) m = std::max(m, s.disagreement);
  return m;
}

ConvergenceReport truncation_convergence_probe(const OperatorExpr& e, const std::vector<std::size_t>& sizes,
                                               const EngineConfig& cfg, std::size_t window) {
  const FloatRing ring(ScalarDomain::complex_float());
  ConvergenceReport report;
  // label -> (p_u, p_s) rows restricted to the trusted window, keyed by label pairs
  using Entries = std::map<std::pair<std::string, std::string>, std::pair<Complex, Complex>>;
  Entries prev;
  for (std::size_t N : sizes) {
    const Truncation t = truncate(e, N, cfg.n_max, window);
    EngineConfig c = cfg;
    c.window = t.window;
    const auto rep = wold(ring, t.matrix, c);
    const CMatrix& pu = rep.find("u")->element;
    const CMatrix& ps = rep.find("s")->element;
    Entries cur;
    for (auto i : t.window)
      for (auto j : t.window) cur[{t.labels[i], t.labels[j]}] = {pu(i, j), ps(i, j)};
    ConvergenceStep step;
    step.N = N;
    if (!prev.empty()) {
      for (const auto& [key, val] : cur) {
        auto it = prev.find(key);
        if (it == prev.end()) continue;
        if (key.first == key.second) ++step.common;
        step.disagreement = std::max({step.disagreement, std::abs(val.first - it->second.first),
                                      std::abs(val.second - it->second.second)});
      }
    }
    report.steps.push_back(step);
    prev = std::move(cur);
  }
  return report;
}

}  // namespace baer::oracle
