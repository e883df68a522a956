#pragma once

#include "baer/ring.hpp"

namespace baer {

/// Float realization of [a] at cutoff eps_rank.
Projection<Complex> range_projection_numeric(const FloatRing& ring, const CMatrix& a);

/// Projection onto the numerical intersection of the two ranges, from the
/// null space of [(1-p); (1-q)].
Projection<Complex> subspace_intersection(const FloatRing& ring, const Projection<Complex>& p,
                                          const Projection<Complex>& q);

/// Hermitian within eps_eq and min eigenvalue of the Hermitian part >= -eps_psd * ||a||.
bool is_positive_float(const FloatRing& ring, const CMatrix& a);

/// Hermitian square root of a positive matrix (eigenvalues clamped at 0).
CMatrix hermitian_sqrt(const CMatrix& a);

/// Singular values, descending.
std::vector<double> singular_values(const CMatrix& a);

}  // namespace baer
