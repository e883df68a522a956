#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baer/ring.hpp"

namespace baer {

struct EngineConfig {
  /// Step cap. Monotone chains are sampled at exponents 1, 2, 4, ... and stop
  /// at the first repeat, so up to 2^(n_max-1) is reached; non-monotone
  /// families are iterated term by term for n = 0..n_max.
  unsigned n_max = 16;
  Window window;            // trusted coordinates (empty: all)
  std::uint64_t seed = 1;   // randomized maximality probes
  unsigned lemma_n = 6;     // Lemma A1/A2 checks for 1 <= n <= lemma_n
  unsigned probe_directions = 20;
};

struct Certificate {
  std::string name;
  double residual = 0.0;
  bool passed = false;
};

template <class S>
struct DecompositionReport {
  std::string method;
  ProjectionBasis<S> basis;
  std::vector<std::pair<std::string, std::string>> block_classes;  // label -> claimed block type
  std::vector<Certificate> certificates;
  std::optional<std::array<bool, 6>> conditions;  // Slocinski only
  bool holds = true;  // Slocinski: the pair admits the fourfold basis
  std::vector<std::pair<std::string, bool>> flags;

  bool certified() const;
  const Projection<S>* find(const std::string& label) const;
  const Certificate* certificate(const std::string& name) const;
};

/// Largest p <= e commuting with every op (and adjoint): M_0 = range(e),
/// M_{k+1} = M_k ∩ ker(W (1 - P_k) a). W is the window indicator; with an
/// empty window this is the exact preimage fixpoint.
template <class S>
Projection<S> reducing_fixpoint(const Ring<S>& ring, const std::vector<Matrix<S>>& ops,
                                const Projection<S>& e, const Window& w = {});

template <class S>
DecompositionReport<S> wold(const Ring<S>& ring, const Matrix<S>& x, const EngineConfig& cfg);

template <class S>
DecompositionReport<S> slocinski(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                 const EngineConfig& cfg);

/// slocinski(x1,x2).holds, checked against the (x1, x1x2) and (x2, x1x2) pairs.
template <class S>
bool corollary_check(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                     const EngineConfig& cfg);

template <class S>
DecompositionReport<S> weak_bishift(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                    const EngineConfig& cfg);

template <class S>
DecompositionReport<S> halmos_wallen(const Ring<S>& ring, const Matrix<S>& x, const EngineConfig& cfg);

template <class S>
DecompositionReport<S> hw_pair_doubly(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                      const EngineConfig& cfg);

template <class S>
DecompositionReport<S> hw_pair_product(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                       const EngineConfig& cfg);

/// Basis {p, rest}; p is the largest reducing projection on which x1x2 is a PPI.
template <class S>
DecompositionReport<S> largest_product_ppi(const Ring<S>& ring, const Matrix<S>& x1,
                                           const Matrix<S>& x2, const EngineConfig& cfg);

template <class S>
DecompositionReport<S> nfl(const Ring<S>& ring, const Matrix<S>& x, const EngineConfig& cfg);

template <class S>
DecompositionReport<S> nfl_pair_doubly(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                       const EngineConfig& cfg);

/// Basis {p, rest}; p = p_d, the largest reducing projection on which the pair doubly commutes.
template <class S>
DecompositionReport<S> largest_doubly_commuting(const Ring<S>& ring, const Matrix<S>& x1,
                                                const Matrix<S>& x2, const EngineConfig& cfg);

/// The basis-level certificates every report carries: pairwise orthogonality,
/// sum to 1, and "<label> commutes with <name>" for each named element. Used
/// by the engine and to recheck a parsed report.
template <class S>
std::vector<Certificate> basis_certificates(const Ring<S>& ring, const ProjectionBasis<S>& basis,
                                            const std::vector<std::pair<std::string, Matrix<S>>>& elements,
                                            const Window& w = {});

enum class PairProperty { product_ppi, doubly_commuting };

struct ProbeResult {
  unsigned directions = 0;
  unsigned violations = 0;  // augmented projections that stayed valid
};

/// Adds vv*/|v|^2 for random v in the complement of p and reports how many of
/// the enlarged projections still commute with both elements and keep the
/// property. A maximal p gives zero violations.
template <class S>
ProbeResult maximality_probe(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                             const Projection<S>& p, PairProperty property, const EngineConfig& cfg);

}  // namespace baer
