#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pkf/core/linalg.hpp"
#include "pkf/core/types.hpp"
#include "pkf/sim/scenario.hpp"

namespace pkf::sim {

enum class Method { binary, pmht, jpdaf, pkf };

std::string_view to_string(Method m);
/// Accepts binary, pmht, jpdaf, pkf. Throws ContractViolation otherwise.
Method parse_method(std::string_view name);
const std::vector<Method>& all_methods();

/// Filter and association settings shared by every method.
struct FilterConfig {
  double pos_process_var = 0.0;
  double vel_process_var = 0.01;
  double init_pos_var = 1.0;
  double init_vel_var = 0.1;
  /// Floor on the filter's measurement variance; a zero-noise scenario still
  /// needs an invertible innovation covariance.
  double min_meas_var = 0.01;
  /// Chi-squared gate on the innovation Mahalanobis distance (0.99, 2 dof).
  double gate_chi2 = 9.21;
  bool gate_binary = false;
  bool gate_pmht = true;
  bool gate_jpdaf = true;
  bool gate_pkf = true;
  /// PKF keeps measurements whose weight exceeds this for its update.
  double pkf_min_weight = 0.0;
  /// Use the stacked joint-state PKF update instead of per-track updates.
  bool coupled = false;
  /// Record symmetry/PSD/finiteness of every posterior covariance.
  bool check_health = true;
  /// A track whose mean error exceeds this counts as failed.
  double fail_threshold = 5.0;
  /// Keep the per-frame estimates in the report.
  bool keep_estimates = false;

  void validate() const;
  LinearModel model(double meas_var) const;
  bool gated(Method m) const;
};

struct TrackingReport {
  Method method = Method::pkf;
  std::vector<double> object_error;
  double average_error = 0.0;
  std::vector<bool> failed;
  int failed_tracks = 0;
  /// Tracks whose state went non-finite; they are frozen and counted as failed.
  int diverged_tracks = 0;
  double mean_update_ms = 0.0;
  double median_update_ms = 0.0;
  CovarianceHealth health;
  /// frames x objects, filled when FilterConfig::keep_estimates is set.
  std::vector<std::vector<Point>> estimates;
};

/// Association weights for the non-binary methods from an M x N matrix of
/// log-likelihoods (-inf outside the gate). pmht uses per-measurement
/// normalization without a clutter hypothesis; jpdaf and pkf share the
/// clutter-aware event weights. Measurements outside every gate get zero rows.
Matrix association_weights(const Matrix& log_q, Method method, double p_detect, double lambda);

/// Tracks start at the true frame-0 position and velocity. Each later
/// frame runs predict, method-specific weights, then the update.
TrackingReport run_tracker(const Scenario& scenario, Method method, const FilterConfig& filter = {});

}  // namespace pkf::sim
