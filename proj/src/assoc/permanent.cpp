#include "pkf/assoc/permanent.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <vector>

#include "pkf/core/errors.hpp"
#include "pkf/core/log.hpp"

namespace pkf {

namespace {

void check_cap(Eigen::Index m, Eigen::Index n, int cap) {
  if (std::max(m, n) > cap) {
    std::ostringstream os;
    os << "exact permanent of a " << m << "x" << n << " matrix exceeds the size cap " << cap;
    throw CapacityError(os.str());
  }
}

void warn_negative(const Matrix& a) {
#ifndef NDEBUG
  if (a.size() > 0 && a.minCoeff() < 0) {
    log::get().warn("permanent: matrix has negative entries; likelihoods should be nonnegative");
  }
#else
  (void)a;
#endif
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Inclusion-exclusion weight of a column subset of size c when counting
// injections of `rows` rows into `cols` columns.
std::vector<long double> subset_coefficients(int rows, int cols) {
  std::vector<long double> coef(cols + 1, 0.0L);
  for (int c = 0; c <= std::min(rows, cols); ++c) {
    const double sign = ((rows - c) % 2 == 0) ? 1.0 : -1.0;
    coef[c] = sign * binomial(cols - c, rows - c);
  }
  return coef;
}

}  // namespace

double permanent(const Matrix& a, int size_cap) {
  if (a.rows() > a.cols()) return permanent(Matrix(a.transpose()), size_cap);
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (m == 0) return 1.0;
  check_cap(m, n, size_cap);
  warn_negative(a);

  const auto coef = subset_coefficients(m, n);
  std::vector<long double> row_sum(m, 0.0L);
  long double total = 0.0L;
  int popcount = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < limit; ++g) {
    const int col = std::countr_zero(g);
    const std::uint64_t gray = g ^ (g >> 1);
    const bool added = (gray >> col) & 1U;
    popcount += added ? 1 : -1;
    const long double sign = added ? 1.0L : -1.0L;
    for (int i = 0; i < m; ++i) row_sum[i] += sign * a(i, col);
    if (coef[popcount] == 0.0L) continue;
    long double prod = 1.0L;
    for (int i = 0; i < m; ++i) prod *= row_sum[i];
    total += coef[popcount] * prod;
  }
  return static_cast<double>(total);
}

PermanentMinors permanent_minors(const Matrix& a, int size_cap) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (m < 1 || m > n) throw ContractViolation("permanent_minors requires 1 <= rows <= cols");
  check_cap(m, n, size_cap);
  warn_negative(a);

  // Each minor drops one row and one column, so it counts injections of m-1
  // rows into the n-1 columns outside the dropped one.
  const auto coef = subset_coefficients(m - 1, n - 1);

  std::vector<long double> acc(static_cast<std::size_t>(m) * n, 0.0L);
  std::vector<long double> row_sum(m, 0.0L);
  std::vector<long double> prefix(m + 1), suffix(m + 1);

  auto visit = [&](std::uint64_t subset, int size) {
    if (size > m - 1 || coef[size] == 0.0L) return;
    prefix[0] = 1.0L;
    for (int i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * row_sum[i];
    suffix[m] = 1.0L;
    for (int i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * row_sum[i];
    for (int k = 0; k < m; ++k) {
      const long double term = coef[size] * prefix[k] * suffix[k + 1];
      if (term == 0.0L) continue;
      long double* row = &acc[static_cast<std::size_t>(k) * n];
      for (int j = 0; j < n; ++j) {
        if (!((subset >> j) & 1U)) row[j] += term;
      }
    }
  };

  visit(0, 0);
  int popcount = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < limit; ++g) {
    const int col = std::countr_zero(g);
    const std::uint64_t gray = g ^ (g >> 1);
    const bool added = (gray >> col) & 1U;
    popcount += added ? 1 : -1;
    const long double sign = added ? 1.0L : -1.0L;
    for (int i = 0; i < m; ++i) row_sum[i] += sign * a(i, col);
    visit(gray, popcount);
  }

  PermanentMinors out;
  out.minors.resize(m, n);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < n; ++j) {
      out.minors(k, j) = static_cast<double>(acc[static_cast<std::size_t>(k) * n + j]);
    }
  }
  long double total = 0.0L;
  for (int j = 0; j < n; ++j) total += static_cast<long double>(a(0, j)) * acc[j];
  out.total = static_cast<double>(total);
  return out;
}

}  // namespace pkf
