#pragma once

#include <cstddef>
#include <vector>

#include "baer/engine.hpp"
#include "baer/matrix.hpp"
#include "baer/shift_model.hpp"

// Brute-force checks for the engine. Everything here runs on its own rational
// elimination and Gram-Schmidt; nothing calls into Ring or the engine formulas
// (the convergence probe is the exception: it exists to run wold).
namespace baer::oracle {

inline constexpr std::size_t kUnitaryDimGuard = 8;
inline constexpr std::size_t kHwDimGuard = 6;

/// Largest reducing projection on which x is unitary: the common kernel of
/// 1 - x*^n x^n and 1 - x^n x*^n (n <= dim), shrunk until x and x* leave it
/// invariant.
RatMatrix brute_unitary_part(const RatMatrix& x);

struct Chain {
  std::vector<RatMatrix> vectors;  // v, xv, ..., x^(k-1) v
  std::size_t length() const { return vectors.size(); }
};

struct HwClassification {
  RatMatrix pu, ps, pb, pt;
  std::vector<Chain> chains;
};

/// Unitary part plus an explicit chain basis of its complement. Throws
/// structural_anomaly when the chains fail to tile the complement.
HwClassification brute_hw_classify(const RatMatrix& x);

struct ConvergenceStep {
  std::size_t N = 0;
  std::size_t common = 0;      // window coordinates shared with the previous size
  double disagreement = 0.0;   // max entry gap of p_u, p_s there (0 for the first size)
};

struct ConvergenceReport {
  std::vector<ConvergenceStep> steps;
  double max_disagreement() const;
};

/// Runs wold on truncations of e at every N and compares p_u, p_s between
/// consecutive sizes on coordinates trusted at both.
ConvergenceReport truncation_convergence_probe(const OperatorExpr& e, const std::vector<std::size_t>& sizes,
                                               const EngineConfig& cfg, std::size_t window = 32);

}  // namespace baer::oracle
