#include "pkf/assoc/ambiguity.hpp"

#include <algorithm>
#include <numeric>

#include "pkf/assoc/components.hpp"
#include "pkf/core/errors.hpp"

namespace pkf {

namespace {

std::vector<int> indices_where(const std::vector<char>& flags, bool value) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(flags.size()); ++i) {
    if (static_cast<bool>(flags[i]) == value) out.push_back(i);
  }
  return out;
}

}  // namespace

AmbiguityPartition ambiguity_check(const Matrix& scores, const AmbiguityOptions& opts) {
  if (scores.size() > 0 && scores.minCoeff() < 0) {
    throw ContractViolation("ambiguity_check: scores must be nonnegative");
  }
  if (!(opts.tau_ambig > 0)) throw ContractViolation("ambiguity_check: tau_ambig must be > 0");

  const int m = static_cast<int>(scores.rows());
  const int n = static_cast<int>(scores.cols());
  std::vector<char> amb_meas(m, 0), amb_obj(n, 0);

  if (opts.tau_ambig < 1.0) {
    std::vector<int> order(n);
    for (int k = 0; k < m; ++k) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return scores(k, a) > scores(k, b); });
      for (int r = 0; r + 1 < n; ++r) {
        const double prev = scores(k, order[r]);
        const double next = scores(k, order[r + 1]);
        if (!(prev > 0 && next > 0 && next >= opts.tau_ambig * prev)) break;
        amb_meas[k] = 1;
        amb_obj[order[r]] = 1;
        amb_obj[order[r + 1]] = 1;
      }
    }
  }

  // Close the set under binary matches.
  const MatchList matches = linear_assignment(scores, opts.match_floor);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [k, j] : matches) {
      if ((amb_meas[k] || amb_obj[j]) && !(amb_meas[k] && amb_obj[j])) {
        amb_meas[k] = 1;
        amb_obj[j] = 1;
        changed = true;
      }
    }
  }

  AmbiguityPartition out;
  out.ambiguous_measurements = indices_where(amb_meas, true);
  out.ambiguous_objects = indices_where(amb_obj, true);
  const std::vector<int> rest_rows = indices_where(amb_meas, false);
  const std::vector<int> rest_cols = indices_where(amb_obj, false);
  if (out.empty()) {
    out.clear_pairs = matches;
    return out;
  }
  for (const auto& [lk, lj] :
       linear_assignment(submatrix(scores, rest_rows, rest_cols), opts.match_floor)) {
    out.clear_pairs.emplace_back(rest_rows[lk], rest_cols[lj]);
  }
  return out;
}

}  // namespace pkf
