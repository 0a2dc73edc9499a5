#pragma once

#include <vector>

#include "pkf/assoc/assignment.hpp"
#include "pkf/core/types.hpp"

namespace pkf {

struct AmbiguityPartition {
  std::vector<int> ambiguous_measurements;
  std::vector<int> ambiguous_objects;
  /// One-to-one matches among the remaining rows and columns.
  MatchList clear_pairs;

  bool empty() const { return ambiguous_measurements.empty() && ambiguous_objects.empty(); }
};

struct AmbiguityOptions {
  /// Successor must score at least this fraction of its predecessor.
  /// Values >= 1 disable the check.
  double tau_ambig = 0.9;
  /// Minimum score for a binary match (IoU 0.3 for boxes).
  double match_floor = 0.3;
};

/// Splits a measurement-by-object score matrix into an ambiguous block and
/// clear one-to-one matches.
///
/// Per row, objects are ranked by score (ties by index) and the chain of
/// adjacent pairs with next >= tau * previous (both positive) marks the row
/// and all chained objects ambiguous. The set is then closed under binary
/// matches: a measurement or object whose match is ambiguous joins it. The
/// rest is matched by linear_assignment with the floor.
AmbiguityPartition ambiguity_check(const Matrix& scores, const AmbiguityOptions& opts = {});

}  // namespace pkf
