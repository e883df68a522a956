#pragma once

// Hand-rolled generators for exact-rational property tests. Every random
// element is assembled from blocks with a known answer and then conjugated by
// a rational orthogonal matrix, so ground truth is the conjugated indicator.

#include <random>
#include <utility>
#include <vector>

#include "baer/matrix.hpp"

namespace baer::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline RatMatrix zeros(std::size_t n) { return RatMatrix(n, n); }
inline RatMatrix eye(std::size_t n) { return RatMatrix::identity(n, Rational(1)); }

/// Truncated shift: e_i -> e_(i+1), e_n -> 0.
inline RatMatrix jordan(std::size_t n) {
  RatMatrix j(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i + 1, i) = 1;
  return j;
}

inline RatMatrix rotation(const Rational& c, const Rational& s) {
  RatMatrix r(2, 2);
  r(0, 0) = c, r(0, 1) = -s, r(1, 0) = s, r(1, 1) = c;
  return r;
}

/// Rational point on the unit circle from a Pythagorean triple, random signs
/// and order.
inline std::pair<Rational, Rational> circle_point(Rng& rng) {
  static const int triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}};
  const auto& t = triples[uniform(rng, 0, 4)];
  Rational c = frac(t[0], t[2]), s = frac(t[1], t[2]);
  if (coin(rng)) std::swap(c, s);
  if (coin(rng)) c = -c;
  if (coin(rng)) s = -s;
  return {c, s};
}

/// Rational orthogonal unitary block of size 1 or 2.
inline RatMatrix unitary_block(Rng& rng, std::size_t d) {
  if (d == 1) return RatMatrix::identity(1, Rational(coin(rng) ? 1 : -1));
  auto [c, s] = circle_point(rng);
  RatMatrix r = rotation(c, s);
  if (coin(rng)) {  // reflection
    r(0, 1) = -r(0, 1);
    r(1, 1) = -r(1, 1);
  }
  return r;
}

/// Product of Householder reflections I - 2vv^T/(v^T v) with small integer v.
inline RatMatrix orthogonal(Rng& rng, std::size_t n, int reflections = 2) {
  RatMatrix q = eye(n);
  for (int r = 0; r < reflections; ++r) {
    RatMatrix v(n, 1);
    Rational nrm = 0;
    while (nrm == 0) {
      nrm = 0;
      for (std::size_t i = 0; i < n; ++i) {
        v(i, 0) = uniform(rng, -2, 2);
        nrm += v(i, 0) * v(i, 0);
      }
    }
    q = (eye(n) - v * v.adjoint() * Rational(2 / nrm)) * q;
  }
  return q;
}

inline RatMatrix conj(const RatMatrix& q, const RatMatrix& a) { return q * a * q.adjoint(); }

inline RatMatrix block_diag(const std::vector<RatMatrix>& blocks) { return direct_sum(blocks); }

/// Diagonal indicator of the blocks flagged true.
inline RatMatrix indicator(const std::vector<RatMatrix>& blocks, const std::vector<bool>& on) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  RatMatrix p(n, n);
  std::size_t at = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (on[k])
      for (std::size_t i = 0; i < blocks[k].rows(); ++i) p(at + i, at + i) = 1;
    at += blocks[k].rows();
  }
  return p;
}

struct Instance {
  RatMatrix x;
  RatMatrix unitary_part;  // ground truth projection
};

/// PPI of dim <= max_dim: unitary blocks and truncated shifts, conjugated.
inline Instance ppi(Rng& rng, std::size_t max_dim = 6) {
  std::vector<RatMatrix> blocks;
  std::vector<bool> unitary;
  std::size_t used = 0;
  while (used < max_dim) {
    const std::size_t room = max_dim - used;
    if (!blocks.empty() && uniform(rng, 0, 3) == 0) break;
    if (coin(rng)) {
      const std::size_t d = room >= 2 ? uniform(rng, 1, 2) : 1;
      blocks.push_back(unitary_block(rng, d));
      unitary.push_back(true);
    } else {
      const std::size_t d = uniform(rng, 1, static_cast<int>(std::min<std::size_t>(room, 4)));
      blocks.push_back(jordan(d));
      unitary.push_back(false);
    }
    used += blocks.back().rows();
  }
  const RatMatrix q = orthogonal(rng, used);
  return {conj(q, block_diag(blocks)), conj(q, indicator(blocks, unitary))};
}

/// Contraction of dim <= max_dim: unitary blocks and completely non-unitary
/// blocks (strict contractions and truncated shifts), conjugated.
inline Instance contraction(Rng& rng, std::size_t max_dim = 8) {
  std::vector<RatMatrix> blocks;
  std::vector<bool> unitary;
  std::size_t used = 0;
  while (used < max_dim) {
    const std::size_t room = max_dim - used;
    if (!blocks.empty() && uniform(rng, 0, 3) == 0) break;
    const int kind = uniform(rng, 0, 3);
    if (kind == 0) {
      blocks.push_back(unitary_block(rng, room >= 2 ? uniform(rng, 1, 2) : 1));
      unitary.push_back(true);
    } else if (kind == 1) {
      blocks.push_back(jordan(uniform(rng, 1, static_cast<int>(std::min<std::size_t>(room, 3)))));
      unitary.push_back(false);
    } else if (kind == 2 || room < 2) {
      RatMatrix d(1, 1);
      d(0, 0) = frac(uniform(rng, -3, 3), 4);
      blocks.push_back(d);
      unitary.push_back(false);
    } else {  // half a rotation plus a nilpotent corner: norm < 1
      auto [c, s] = circle_point(rng);
      RatMatrix r = rotation(c, s) * frac(1, 2);
      r(1, 0) += frac(1, 4);
      blocks.push_back(r);
      unitary.push_back(false);
    }
    used += blocks.back().rows();
  }
  const RatMatrix q = orthogonal(rng, used);
  return {conj(q, block_diag(blocks)), conj(q, indicator(blocks, unitary))};
}

struct PairInstance {
  RatMatrix x1, x2;
};

/// Commuting PPI pair whose product is again a PPI, blockwise: commuting
/// unitaries, (J_k^a, J_k^b), (+-1, J_k), (J_k, +-1), (0, J_k).
inline PairInstance ppi_pair(Rng& rng, std::size_t max_dim = 6) {
  std::vector<RatMatrix> a, b;
  std::size_t used = 0;
  while (used < max_dim) {
    const std::size_t room = max_dim - used;
    if (!a.empty() && uniform(rng, 0, 3) == 0) break;
    const int kind = uniform(rng, 0, 3);
    if (kind == 0) {
      if (room >= 2 && coin(rng)) {
        auto [c1, s1] = circle_point(rng);
        auto [c2, s2] = circle_point(rng);
        a.push_back(rotation(c1, s1));
        b.push_back(rotation(c2, s2));
      } else {
        a.push_back(unitary_block(rng, 1));
        b.push_back(unitary_block(rng, 1));
      }
    } else {
      const std::size_t k = uniform(rng, 1, static_cast<int>(std::min<std::size_t>(room, 4)));
      const RatMatrix j = jordan(k);
      if (kind == 1) {
        a.push_back(power(j, uniform(rng, 1, 2), Rational(1)));
        b.push_back(power(j, uniform(rng, 1, 2), Rational(1)));
      } else if (kind == 2) {
        a.push_back(eye(k) * Rational(coin(rng) ? 1 : -1));
        b.push_back(j);
        if (coin(rng)) std::swap(a.back(), b.back());
      } else {
        a.push_back(zeros(k));
        b.push_back(j);
        if (coin(rng)) std::swap(a.back(), b.back());
      }
    }
    used += a.back().rows();
  }
  const RatMatrix q = orthogonal(rng, used);
  return {conj(q, block_diag(a)), conj(q, block_diag(b))};
}

/// Commuting PPIs (J_3 + 0, x2) in dim 4 whose product is not a PPI: x2 sends
/// e1 -> c e2 + s e4, e2 -> c e3, e4 -> s e3, e3 -> 0 for a circle point (c, s).
inline PairInstance non_ppi_product(Rng& rng) {
  auto [c, s] = circle_point(rng);
  if (c == 0 || s == 0) c = frac(3, 5), s = frac(4, 5);
  RatMatrix x1 = block_diag({jordan(3), zeros(1)});
  RatMatrix x2(4, 4);
  x2(1, 0) = c, x2(3, 0) = s;
  x2(2, 1) = c;
  x2(2, 3) = s;
  const RatMatrix q = orthogonal(rng, 4);
  return {conj(q, x1), conj(q, x2)};
}

/// Commuting PPI pairs for the largest-PPI construction: the non-PPI fixture
/// summed with blocks whose product is a PPI.
inline PairInstance product_ppi_candidate(Rng& rng) {
  PairInstance bad = non_ppi_product(rng);
  if (coin(rng)) return bad;
  PairInstance good = ppi_pair(rng, 3);
  RatMatrix x1 = block_diag({bad.x1, good.x1}), x2 = block_diag({bad.x2, good.x2});
  const RatMatrix q = orthogonal(rng, x1.rows());
  return {conj(q, x1), conj(q, x2)};
}

/// Commuting contraction pairs: (J_k^a, J_k^b) blocks do not doubly commute,
/// rotation pairs and scalar blocks do.
inline PairInstance commuting_contractions(Rng& rng, std::size_t max_dim = 6, bool doubly_only = false) {
  std::vector<RatMatrix> a, b;
  std::size_t used = 0;
  while (used < max_dim) {
    const std::size_t room = max_dim - used;
    if (!a.empty() && uniform(rng, 0, 3) == 0) break;
    const int kind = uniform(rng, doubly_only ? 1 : 0, 2);
    if (kind == 0 && room >= 2) {
      const std::size_t k = uniform(rng, 2, static_cast<int>(std::min<std::size_t>(room, 3)));
      a.push_back(power(jordan(k), uniform(rng, 1, 2), Rational(1)));
      b.push_back(jordan(k));
    } else if (kind == 1 && room >= 2) {
      auto [c1, s1] = circle_point(rng);
      auto [c2, s2] = circle_point(rng);
      a.push_back(rotation(c1, s1));
      b.push_back(rotation(c2, s2) * frac(1, uniform(rng, 1, 2)));
    } else {
      RatMatrix d1(1, 1), d2(1, 1);
      d1(0, 0) = frac(uniform(rng, -2, 2), 2);
      d2(0, 0) = frac(uniform(rng, -2, 2), 2);
      a.push_back(d1);
      b.push_back(d2);
    }
    used += a.back().rows();
  }
  const RatMatrix q = orthogonal(rng, used);
  return {conj(q, block_diag(a)), conj(q, block_diag(b))};
}

}  // namespace baer::gen
