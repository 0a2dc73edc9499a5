#pragma once

#include <Eigen/Dense>

namespace pkf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Gaussian belief over one object's state.
struct GaussianBelief {
  Vector mean;
  Matrix cov;

  Eigen::Index dim() const { return mean.size(); }
};

/// Linear-Gaussian motion and observation model.
///
///   x' = F x + G u + w,  w ~ N(0, W)
///   z  = H x + v,        v ~ N(0, V)
struct LinearModel {
  Matrix F;
  Matrix G;
  Matrix W;
  Matrix H;
  Matrix V;

  Eigen::Index state_dim() const { return F.rows(); }
  Eigen::Index meas_dim() const { return H.rows(); }

  /// Throws ContractViolation when the matrices do not conform.
  void validate() const;
};

}  // namespace pkf
