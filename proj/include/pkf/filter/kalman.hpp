#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pkf/assoc/weights.hpp"
#include "pkf/core/types.hpp"

namespace pkf {

/// A measurement paired with its association weight for one object.
struct WeightedMeasurement {
  Vector z;
  double weight = 1.0;
};

/// Stacked observation model for one object: every associated measurement
/// appears once, observed through H with noise V / w.
struct ExpandedMeasurement {
  Vector z_bar;
  Matrix H_bar;
  Matrix V_bar;
};

struct UpdateOptions {
  /// Joseph-form covariance update; plain (I - K H) P when false.
  bool joseph = true;
  /// Weights are clamped to at least this value before dividing V.
  double weight_floor = 1e-6;
};

/// mean = F mu + G u, cov = F Sigma F^T + W (symmetrized). A missing or empty
/// input is treated as zero.
GaussianBelief predict(const GaussianBelief& belief, const LinearModel& model,
                       const std::optional<Vector>& input = std::nullopt);

/// Textbook Kalman update with Joseph-form covariance.
GaussianBelief kf_update(const GaussianBelief& prior, const Vector& z, const LinearModel& model);

/// Builds the stacked measurement vector, observation matrix and the block
/// diagonal V / w noise. Throws ContractViolation on a non-positive weight.
ExpandedMeasurement expand_measurements(std::span<const WeightedMeasurement> meas,
                                        const LinearModel& model, double weight_floor = 1e-6);

/// Probabilistic-association update: one Kalman step on the expanded
/// measurement model. Returns the prior unchanged for an empty list.
GaussianBelief pkf_update(const GaussianBelief& prior, std::span<const WeightedMeasurement> meas,
                          const LinearModel& model, const UpdateOptions& opts = {});

/// Coupled variant over a joint state of N stacked objects (n N entries).
/// weights is M x N; pairs with weight <= min_weight are left out of the
/// expanded model.
GaussianBelief pkf_update_joint(const GaussianBelief& joint_prior, std::span<const Vector> meas,
                                const Matrix& weights, const LinearModel& model,
                                double min_weight = 0.0, const UpdateOptions& opts = {});

/// Moment-matched JPDAF update. `clutter_weight` is the probability that none
/// of the listed measurements belongs to this object; weights plus clutter
/// must sum to one within 1e-9.
GaussianBelief jpdaf_update(const GaussianBelief& prior, std::span<const WeightedMeasurement> meas,
                            double clutter_weight, const LinearModel& model);

/// PMHT pooled-measurement update: z = sum w z / sum w with noise V / sum w.
/// Returns the prior when the weights sum to zero.
GaussianBelief pmht_update(const GaussianBelief& prior, std::span<const WeightedMeasurement> meas,
                           const LinearModel& model);

/// Per-object (measurement index, weight) lists keeping weights above a threshold.
using UpdateBatch = std::map<int, std::vector<std::pair<int, double>>>;

/// Columns of `weights` become per-object lists of measurements whose weight
/// exceeds tau_weight, in ascending measurement order. Weights are not
/// renormalized after thresholding.
UpdateBatch build_update_batch(const Matrix& weights, double tau_weight);

}  // namespace pkf
