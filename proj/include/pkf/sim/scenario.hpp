#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace pkf::sim {

using Point = Eigen::Vector2d;

struct ScenarioConfig {
  int n_objects = 3;
  int n_frames = 400;
  double p_detect = 0.9;
  /// Per-axis measurement noise variance.
  double meas_var = 0.75;
  /// Clutter is drawn uniformly in a square of this half-width around each object.
  double clutter_halfwidth = 10.0;
  /// Clutter spatial density, also the lambda used by the clutter-aware weights.
  double lambda = 0.125;
  /// Expected clutter count per object per frame is lambda * clutter_area_factor.
  /// Calibration constant; 20 gives about 2.5 points per object.
  double clutter_area_factor = 4.0;
  std::uint64_t seed = 1;

  // Figure-eight x = A sin(w t + phi_j) + cx_j, y = A sin(w t + phi_j) cos(w t + phi_j) + cy_j.
  double amplitude = 6.0;
  double omega = 0.031415926535897934;  // 2 pi / 200
  /// Empty means evenly spaced: 2 pi j / n for odd n, 2 pi j / (n + 1) for even n.
  std::vector<double> phases;
  /// Per-object centre offsets; empty means the origin.
  std::vector<Point> centers;

  /// Throws ContractViolation when a field is out of range.
  void validate() const;
  double phase(int object) const;
  Point center(int object) const;
  double clutter_mean() const { return lambda * clutter_area_factor; }
};

struct SimDetection {
  Point z;
  /// Originating object, or -1 for clutter.
  int source = -1;
};

struct SimFrame {
  std::vector<Point> truth;
  std::vector<SimDetection> detections;
};

struct Scenario {
  ScenarioConfig config;
  std::vector<SimFrame> frames;
};

/// Ground-truth position and velocity of one object at frame t.
Point truth_position(const ScenarioConfig& config, int object, int frame);
Point truth_velocity(const ScenarioConfig& config, int object, int frame);

/// Deterministic in config (seed included). Detections of one frame are
/// shuffled so their order carries no identity information.
Scenario generate_scenario(const ScenarioConfig& config);

}  // namespace pkf::sim
