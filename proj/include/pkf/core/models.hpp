#pragma once

#include "pkf/core/types.hpp"
#include "pkf/core/box.hpp"

namespace pkf {

/// Indices into the 7-dim box state [u, v, s, r, du, dv, ds].
namespace box_state {
inline constexpr int kU = 0;
inline constexpr int kV = 1;
inline constexpr int kS = 2;
inline constexpr int kR = 3;
inline constexpr int kDU = 4;
inline constexpr int kDV = 5;
inline constexpr int kDS = 6;
inline constexpr int kDim = 7;
inline constexpr int kMeasDim = 4;
}  // namespace box_state

/// Constant-velocity model over the 7-dim box state with no control input.
///
/// F = I + (u,v,s) <- (du,dv,ds), G = 0 (7x1), W = diag(I4, 0.01 I3),
/// H = [I4 | 0], V = diag(I2, 10 I2).
LinearModel sort_motion_model();

/// Initial covariance for a freshly created box track.
struct BoxInitConfig {
  double position_var = 10.0;
  double velocity_var = 1e4;
};

/// New box track from one detection; velocity mean starts at zero.
GaussianBelief init_box_belief(const BBox& box, const BoxInitConfig& cfg = {});

/// Freezes the area when the predicted area would turn non-positive.
/// Call before predict; sets ds = 0 when s + ds <= 0.
void clamp_area_velocity(Vector& mean);

/// Pulls s and r back into the valid domain after an update.
void clamp_box_state(Vector& mean, double min_area = 1.0, double min_ratio = 1e-3);

/// Two-dimensional constant-velocity point model [px, py, vx, vy] with dt = 1.
LinearModel point_cv_model(double pos_process_var, double vel_process_var, double meas_var);

}  // namespace pkf
