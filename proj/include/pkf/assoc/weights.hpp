#pragma once

#include <optional>
#include <vector>

#include "pkf/assoc/permanent.hpp"
#include "pkf/core/types.hpp"

namespace pkf {

/// Nonnegative measurement-by-object likelihoods with per-row normalization.
///
/// Each row is divided by its maximum so that products inside the permanents
/// stay in range; the divisors are kept in row_scales (1 for all-zero rows).
class LikelihoodMatrix {
public:
  LikelihoodMatrix() = default;

  /// Throws ContractViolation on negative or non-finite entries.
  explicit LikelihoodMatrix(const Matrix& raw);

  /// Builds from per-row log-likelihoods; -inf marks impossible pairs. Avoids
  /// the underflow that exponentiating first would cause.
  static LikelihoodMatrix from_log(const Matrix& log_q);

  Eigen::Index rows() const { return scaled_.rows(); }
  Eigen::Index cols() const { return scaled_.cols(); }

  /// Rows rescaled to unit maximum.
  const Matrix& scaled() const { return scaled_; }
  /// log of the per-row divisors.
  const Vector& log_row_scales() const { return log_scales_; }
  Vector row_scales() const { return log_scales_.array().exp(); }

  /// Reconstructs the unscaled matrix (may underflow for extreme inputs).
  Matrix raw() const;

  /// Same likelihoods with measurements and objects swapped.
  LikelihoodMatrix transposed() const;

private:
  Matrix scaled_;
  Vector log_scales_;
};

enum class WeightMode { pkf, jpdaf, pmht };

/// Association probabilities w(k, j) that measurement k came from object j.
struct WeightMatrix {
  Matrix w;
  /// Probability that measurement k is a false alarm (jpdaf/pmht only).
  std::optional<Vector> clutter;
  WeightMode mode = WeightMode::pkf;
  /// Rows that had no usable probability mass and were filled uniformly.
  std::vector<bool> degenerate_rows;

  bool any_degenerate() const;
};

struct WeightOptions {
  int size_cap = kDefaultPermanentCap;
};

/// Joint association weights w(k, j) proportional to Q(k, j) per(Q without
/// row k and column j), each row normalized to one.
///
/// Requires M <= N. Works per connected component of the positive-entry
/// graph. A row whose component admits no injective assignment (including an
/// all-zero row) is spread uniformly over its positive entries, or over all
/// objects when it has none, and flagged in degenerate_rows.
WeightMatrix pkf_weights(const LikelihoodMatrix& q, const WeightOptions& opts = {});

/// pkf_weights for any shape. When M > N the roles swap: objects choose
/// measurements, so the returned columns (not rows) sum to one and some
/// measurements can end up with little total weight.
WeightMatrix pkf_block_weights(const LikelihoodMatrix& q, const WeightOptions& opts = {});

/// JPDAF marginal weights with missed detections and Poisson clutter.
///
/// An event with Phi false alarms has prior
///   lambda^Phi * p_detect^(M - Phi) * (1 - p_detect)^(N - M + Phi)
/// times the product of the likelihoods of its assigned pairs. Per connected
/// component, events are summed exactly by a forward-backward pass over
/// subsets of the smaller side, so cost is O(max * min * 2^min). The result carries a clutter column and every row
/// (weights plus clutter) sums to one.
WeightMatrix jpdaf_weights(const LikelihoodMatrix& q, double p_detect, double clutter_density,
                           const WeightOptions& opts = {});

/// PMHT-style independent weights: each measurement normalizes over objects
/// (plus an optional clutter term) without any exclusivity between rows.
/// w(k, j) = p_detect Q(k, j) / (sum_j p_detect Q(k, j) + clutter_density).
/// Pass clutter_density = 0 for a plain per-row softmax of likelihoods.
WeightMatrix pmht_weights(const LikelihoodMatrix& q, double p_detect = 1.0,
                          double clutter_density = 0.0);

}  // namespace pkf
