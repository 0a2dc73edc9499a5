#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "pkf/core/types.hpp"

namespace pkf {

using MatchList = std::vector<std::pair<int, int>>;

/// Maximum-total-score one-to-one matching of rows to columns.
///
/// Solves the rectangular assignment problem exactly (shortest augmenting
/// paths with potentials), so min(M, N) pairs are matched; pairs scoring
/// below `floor` are then dropped. Result is sorted by row index.
MatchList linear_assignment(const Matrix& scores,
                            double floor = -std::numeric_limits<double>::infinity());

}  // namespace pkf
