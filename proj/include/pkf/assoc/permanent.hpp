#pragma once

#include "pkf/core/types.hpp"

namespace pkf {

inline constexpr int kDefaultPermanentCap = 20;

/// Permanent of an M x N matrix: the sum over injective maps from the shorter
/// side into the longer side of the product of the selected entries.
///
/// Exact Ryser inclusion-exclusion with Gray-code column-subset updates. For
/// M < N the column subsets Y with |Y| <= M are weighted by
/// (-1)^(M-|Y|) * C(N-|Y|, M-|Y|). A matrix with M > N is handled through its
/// transpose; a 0 x c matrix has permanent 1.
///
/// Throws CapacityError when max(M, N) exceeds `size_cap`.
double permanent(const Matrix& a, int size_cap = kDefaultPermanentCap);

/// Permanents of every (M-1) x (N-1) minor of an M x N matrix with M <= N.
struct PermanentMinors {
  /// minors(k, j) = per(a with row k and column j removed).
  Matrix minors;
  /// per(a) itself.
  double total = 0.0;
};

/// All row/column-deleted minor permanents in one Gray-code sweep.
/// Requires 1 <= M <= N.
PermanentMinors permanent_minors(const Matrix& a, int size_cap = kDefaultPermanentCap);

}  // namespace pkf
