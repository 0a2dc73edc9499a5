#include "pkf/core/models.hpp"

namespace pkf {

using namespace box_state;

LinearModel sort_motion_model() {
  LinearModel m;
  m.F = Matrix::Identity(kDim, kDim);
  m.F(kU, kDU) = 1.0;
  m.F(kV, kDV) = 1.0;
  m.F(kS, kDS) = 1.0;

  m.G = Matrix::Zero(kDim, 1);

  m.W = Matrix::Identity(kDim, kDim);
  m.W.bottomRightCorner(3, 3) *= 0.01;

  m.H = Matrix::Zero(kMeasDim, kDim);
  m.H.leftCols(kMeasDim) = Matrix::Identity(kMeasDim, kMeasDim);

  m.V = Matrix::Identity(kMeasDim, kMeasDim);
  m.V.bottomRightCorner(2, 2) *= 10.0;
  return m;
}

GaussianBelief init_box_belief(const BBox& box, const BoxInitConfig& cfg) {
  GaussianBelief b;
  b.mean = Vector::Zero(kDim);
  b.mean.head<kMeasDim>() = bbox_to_z(box);
  b.cov = Matrix::Zero(kDim, kDim);
  b.cov.diagonal().head<kMeasDim>().setConstant(cfg.position_var);
  b.cov.diagonal().tail<3>().setConstant(cfg.velocity_var);
  return b;
}

void clamp_area_velocity(Vector& mean) {
  if (mean[kS] + mean[kDS] <= 0) mean[kDS] = 0.0;
}

void clamp_box_state(Vector& mean, double min_area, double min_ratio) {
  if (!(mean[kS] >= min_area)) mean[kS] = min_area;
  if (!(mean[kR] >= min_ratio)) mean[kR] = min_ratio;
}

LinearModel point_cv_model(double pos_process_var, double vel_process_var, double meas_var) {
  LinearModel m;
  m.F = Matrix::Identity(4, 4);
  m.F(0, 2) = 1.0;
  m.F(1, 3) = 1.0;
  m.G = Matrix::Zero(4, 1);
  m.W = Matrix::Zero(4, 4);
  m.W.diagonal() << pos_process_var, pos_process_var, vel_process_var, vel_process_var;
  m.H = Matrix::Zero(2, 4);
  m.H(0, 0) = 1.0;
  m.H(1, 1) = 1.0;
  m.V = meas_var * Matrix::Identity(2, 2);
  return m;
}

}  // namespace pkf
