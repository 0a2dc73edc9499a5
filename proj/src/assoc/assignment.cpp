#include "pkf/assoc/assignment.hpp"

#include <algorithm>
#include <limits>

#include "pkf/core/errors.hpp"

namespace pkf {

namespace {

// Minimum-cost assignment of every row to a distinct column, rows <= cols.
// Returns the column chosen by each row.
std::vector<int> solve_min_cost(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> owner(m + 1, 0), way(m + 1, 0);
  std::vector<double> min_slack(m + 1);
  std::vector<char> used(m + 1);

  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (owner[j] > 0) row_to_col[owner[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

MatchList linear_assignment(const Matrix& scores, double floor) {
  MatchList out;
  if (scores.rows() == 0 || scores.cols() == 0) return out;
  if (!scores.allFinite()) throw ContractViolation("linear_assignment: scores must be finite");

  const bool transpose = scores.rows() > scores.cols();
  const Matrix s = transpose ? Matrix(scores.transpose()) : scores;
  // Maximize score == minimize (max - score), kept nonnegative.
  const Matrix cost = (s.maxCoeff() - s.array()).matrix();
  const std::vector<int> assign = solve_min_cost(cost);

  for (int i = 0; i < static_cast<int>(assign.size()); ++i) {
    const int j = assign[i];
    if (j < 0 || s(i, j) < floor) continue;
    out.emplace_back(transpose ? j : i, transpose ? i : j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pkf
