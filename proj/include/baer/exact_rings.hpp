#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "baer/ring.hpp"

namespace baer {

/// Largest p^(dim^2) the cone enumeration will walk.
inline constexpr std::uint64_t kConeGuard = 1'000'000;

/// Positive cone of M_dim(F_p) with transpose involution: the additive
/// closure of { x^T x }. Members are keyed by their row-major base-p code.
class ConeTable {
 public:
  ConeTable(std::uint32_t prime, std::size_t dim);

  std::uint32_t prime() const { return prime_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  std::size_t square_count() const { return squares_.size(); }

  bool contains(const GfMatrix& a) const;
  /// Some single x with x^T x = a.
  bool is_square(const GfMatrix& a) const;

  /// Elements x_1..x_k with sum x_i^T x_i = a (shortest found by the closure
  /// walk), or nullopt if a is not positive.
  std::optional<std::vector<GfMatrix>> witness(const GfMatrix& a) const;

  std::uint64_t encode(const GfMatrix& a) const;
  GfMatrix decode(std::uint64_t code) const;

  const std::vector<std::uint64_t>& members() const { return order_; }

 private:
  struct Step {
    std::uint64_t previous;  // member this one was reached from (self for roots)
    std::uint64_t factor;    // code of x with x^T x the added square
  };

  std::uint32_t prime_;
  std::size_t dim_;
  std::unordered_map<std::uint64_t, std::uint64_t> squares_;  // x^T x -> x
  std::unordered_map<std::uint64_t, Step> members_;
  std::vector<std::uint64_t> order_;
};

struct AxiomReport {
  bool proper = false;
  bool antisymmetric = false;
  bool smooth = false;
};

/// Domain for M_dim(F_p); rejects (p, dim) with an isotropic vector.
ScalarDomain construct_gf_ring(std::uint32_t prime, std::size_t dim);

/// Nonzero v in F_p^dim with sum v_i^2 = 0, if any.
std::optional<std::vector<std::uint32_t>> isotropic_vector(std::uint32_t prime,
                                                           std::size_t dim);

ConeTable positivity_cone(const ScalarDomain& domain);

/// Rational: symmetric and PSD by exact symmetric elimination.
/// Finite field: cone membership. Complex float: eigenvalue bound.
template <class S>
bool is_positive(const Ring<S>& ring, const Matrix<S>& a);
template <>
bool is_positive(const Ring<Rational>& ring, const RatMatrix& a);
template <>
bool is_positive(const Ring<Gf>& ring, const GfMatrix& a);
template <>
bool is_positive(const Ring<Complex>& ring, const CMatrix& a);

AxiomReport axiom_probe(const ScalarDomain& domain, std::size_t dim = 2,
                        std::uint64_t seed = 1);

/// Brute-force check that every right annihilator in M_dim(F_p) is pA for a
/// projection p. Enumeration; p^(dim^2) within kConeGuard only.
bool verify_annihilator_axiom(const ScalarDomain& domain);

}  // namespace baer
