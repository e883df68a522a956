#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "baer/matrix.hpp"

namespace baer {

/// Constructor grammar for the infinite-dimensional operators.
struct OperatorExpr {
  enum class Kind { unitary, shift, backshift, trunc, sum, compose, adjoint, grid };

  Kind kind = Kind::unitary;
  CMatrix matrix;           // unitary
  std::size_t param = 0;    // shift/backshift multiplicity, trunc size, grid axis
  std::vector<OperatorExpr> children;

  static OperatorExpr unitary(CMatrix u);
  static OperatorExpr shift(std::size_t m = 1);
  static OperatorExpr backshift(std::size_t m = 1);
  static OperatorExpr trunc(std::size_t n);
  static OperatorExpr sum(std::vector<OperatorExpr> parts);
  static OperatorExpr compose(OperatorExpr f, OperatorExpr g);
  static OperatorExpr adjoint(OperatorExpr f);
  static OperatorExpr grid(std::size_t axis);
  /// f composed with itself k times (k >= 1).
  static OperatorExpr power(const OperatorExpr& f, std::size_t k);
};

struct Segment {
  enum class Kind { finite, tail, grid };
  Kind kind = Kind::finite;
  std::size_t size = 0;  // finite: dimension; tail: multiplicity; grid: unused

  friend bool operator==(const Segment&, const Segment&) = default;
};

using SpaceDescriptor = std::vector<Segment>;

/// Space the expression acts on; throws malformed_element on mismatched Compose.
SpaceDescriptor space_of(const OperatorExpr& e);

/// Isometry by construction: Unitary, Shift, GridShift, Adjoint(Unitary),
/// and sums / compositions of those.
bool is_isometry_expr(const OperatorExpr& e);

struct Truncation {
  CMatrix matrix;
  SpaceDescriptor space;
  std::vector<std::string> labels;          // one per coordinate
  std::vector<std::size_t> segment_begin;   // first coordinate of each segment
  std::size_t strand_length = 0;            // L for tails, N per axis for a grid
  Window window;                            // trusted coordinates, never empty
};

/// Layout of the truncated basis for a space at total size N: finite
/// segments keep their size, every shift strand gets L = (N - F) / T
/// positions (interleaved: coordinate pos * m + strand), and a grid uses N per
/// axis (coordinate i * N + j). The window keeps every finite coordinate and
/// strand positions below min(window, L - n_max).
Truncation truncate_layout(const SpaceDescriptor& space, std::size_t N, unsigned n_max = 0,
                           std::size_t window = 0);

Truncation truncate(const OperatorExpr& e, std::size_t N, unsigned n_max = 0,
                    std::size_t window = 0);

/// Window for methods that also take adjoint powers (Halmos-Wallen family).
/// A forward strand vanishes on W positions only at exponents >= W, while
/// adjoint powers stay exact there only up to L - W. The doubling limit stops
/// at a repeat of n and 2n, so both must fit: W <= L / 5 leaves a power of
/// two n in [W, 2W) with 2n <= L - W.
std::size_t two_sided_window(const SpaceDescriptor& space, std::size_t N, std::size_t window);

/// Per-segment labels: 'u'/'s' (Wold) and 'u'/'s'/'b'/'t' (Halmos-Wallen).
struct GroundTruth {
  std::vector<char> wold;
  std::vector<char> hw;
};

GroundTruth ground_truth_wold(const OperatorExpr& e);
/// Halmos-Wallen labels, defined for sums of atoms (and their adjoints).
GroundTruth ground_truth_hw(const OperatorExpr& e);

/// Diagonal indicator of the coordinates whose segment label is `label`.
CMatrix indicator(const Truncation& t, const std::vector<char>& segment_labels, char label);

/// Commuting pair from the catalog: grid, equal-shift, powers, unitary-pair,
/// mixed, unitary-shift.
std::pair<OperatorExpr, OperatorExpr> pair_instances(std::string_view name);
std::vector<std::string> pair_catalog();

/// Haar-ish random unitary: product of complex Householder reflections and phases.
CMatrix random_unitary(std::size_t d, std::mt19937_64& rng);

/// Commuting unitary pair (U1, U2) = (V D1 V*, V D2 V*).
std::pair<CMatrix, CMatrix> random_commuting_unitaries(std::size_t d, std::mt19937_64& rng);

/// Random isometry expression: 1-2 unitary blocks (dims 1-4) and shift tails of
/// total multiplicity 1-3.
OperatorExpr random_isometry_expr(std::mt19937_64& rng);

/// Random commuting isometry pair assembled from blocks (commuting unitaries,
/// shift powers on a tail, identity-times-shift on a tail).
std::pair<OperatorExpr, OperatorExpr> random_isometry_pair(std::mt19937_64& rng);

/// Canonical text form, e.g. sum(unitary([[0,1],[1,0]]),shift(1)).
std::string to_text(const OperatorExpr& e);
OperatorExpr parse_text(std::string_view text);

}  // namespace baer
