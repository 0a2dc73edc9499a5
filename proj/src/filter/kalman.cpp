#include "pkf/filter/kalman.hpp"

#include <cmath>
#include <sstream>

#include "pkf/core/errors.hpp"
#include "pkf/core/linalg.hpp"

namespace pkf {

namespace {

void check_belief(const GaussianBelief& b, const LinearModel& model) {
  const auto n = model.state_dim();
  if (b.mean.size() != n || b.cov.rows() != n || b.cov.cols() != n) {
    throw ContractViolation("belief dimension does not match the model");
  }
}

// One Kalman step on an arbitrary (possibly stacked) linear observation.
GaussianBelief gain_update(const GaussianBelief& prior, const Vector& z, const Matrix& H,
                           const Matrix& V, bool joseph) {
  const Matrix PHt = prior.cov * H.transpose();
  Matrix S = H * PHt + V;
  symmetrize(S);
  // K = P H^T S^-1, computed as (S^-1 H P)^T since S and P are symmetric.
  const Matrix K = spd_solve(S, PHt.transpose(), "innovation covariance").transpose();

  GaussianBelief post;
  post.mean = prior.mean + K * (z - H * prior.mean);
  const Matrix I_KH = Matrix::Identity(prior.cov.rows(), prior.cov.cols()) - K * H;
  if (joseph) {
    post.cov = I_KH * prior.cov * I_KH.transpose() + K * V * K.transpose();
  } else {
    post.cov = I_KH * prior.cov;
  }
  symmetrize(post.cov);
  return post;
}

}  // namespace

GaussianBelief predict(const GaussianBelief& belief, const LinearModel& model,
                       const std::optional<Vector>& input) {
  check_belief(belief, model);
  GaussianBelief out;
  out.mean = model.F * belief.mean;
  if (input && input->size() > 0) {
    if (input->size() != model.G.cols()) throw ContractViolation("input dimension mismatch");
    out.mean += model.G * *input;
  }
  out.cov = model.F * belief.cov * model.F.transpose() + model.W;
  symmetrize(out.cov);
  return out;
}

GaussianBelief kf_update(const GaussianBelief& prior, const Vector& z, const LinearModel& model) {
  check_belief(prior, model);
  if (z.size() != model.meas_dim()) throw ContractViolation("measurement dimension mismatch");
  return gain_update(prior, z, model.H, model.V, true);
}

ExpandedMeasurement expand_measurements(std::span<const WeightedMeasurement> meas,
                                        const LinearModel& model, double weight_floor) {
  const auto m = model.meas_dim();
  const auto n = model.state_dim();
  const auto count = static_cast<Eigen::Index>(meas.size());
  ExpandedMeasurement e;
  e.z_bar.resize(m * count);
  e.H_bar.resize(m * count, n);
  e.V_bar = Matrix::Zero(m * count, m * count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const auto& wm = meas[static_cast<std::size_t>(k)];
    if (wm.z.size() != m) throw ContractViolation("measurement dimension mismatch");
    if (!(wm.weight > 0)) {
      std::ostringstream os;
      os << "association weight must be positive, got " << wm.weight;
      throw ContractViolation(os.str());
    }
    const double w = std::max(wm.weight, weight_floor);
    e.z_bar.segment(k * m, m) = wm.z;
    e.H_bar.middleRows(k * m, m) = model.H;
    e.V_bar.block(k * m, k * m, m, m) = model.V / w;
  }
  return e;
}

GaussianBelief pkf_update(const GaussianBelief& prior, std::span<const WeightedMeasurement> meas,
                          const LinearModel& model, const UpdateOptions& opts) {
  check_belief(prior, model);
  if (meas.empty()) return prior;
  const ExpandedMeasurement e = expand_measurements(meas, model, opts.weight_floor);
  return gain_update(prior, e.z_bar, e.H_bar, e.V_bar, opts.joseph);
}

GaussianBelief pkf_update_joint(const GaussianBelief& joint_prior, std::span<const Vector> meas,
                                const Matrix& weights, const LinearModel& model,
                                double min_weight, const UpdateOptions& opts) {
  const auto n = model.state_dim();
  const auto m = model.meas_dim();
  const auto objects = weights.cols();
  if (weights.rows() != static_cast<Eigen::Index>(meas.size()) ||
      joint_prior.mean.size() != n * objects || joint_prior.cov.rows() != n * objects) {
    throw ContractViolation("pkf_update_joint: dimension mismatch");
  }
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index k = 0; k < weights.rows(); ++k) {
    for (Eigen::Index j = 0; j < objects; ++j) {
      if (weights(k, j) > min_weight && weights(k, j) > 0) pairs.emplace_back(k, j);
    }
  }
  if (pairs.empty()) return joint_prior;
  const auto rows = m * static_cast<Eigen::Index>(pairs.size());
  Vector z_bar(rows);
  Matrix H_bar = Matrix::Zero(rows, n * objects);
  Matrix V_bar = Matrix::Zero(rows, rows);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [k, j] = pairs[p];
    const auto r = static_cast<Eigen::Index>(p) * m;
    z_bar.segment(r, m) = meas[static_cast<std::size_t>(k)];
    H_bar.block(r, j * n, m, n) = model.H;
    V_bar.block(r, r, m, m) = model.V / std::max(weights(k, j), opts.weight_floor);
  }
  return gain_update(joint_prior, z_bar, H_bar, V_bar, opts.joseph);
}

GaussianBelief jpdaf_update(const GaussianBelief& prior, std::span<const WeightedMeasurement> meas,
                            double clutter_weight, const LinearModel& model) {
  check_belief(prior, model);
  double total = clutter_weight;
  for (const auto& wm : meas) {
    if (wm.weight < 0) throw ContractViolation("jpdaf_update: negative weight");
    total += wm.weight;
  }
  if (clutter_weight < 0 || std::abs(total - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "jpdaf_update: weights plus clutter must sum to 1, got " << total;
    throw ContractViolation(os.str());
  }
  if (meas.empty() || clutter_weight >= 1.0) return prior;

  const Matrix& H = model.H;
  const Matrix PHt = prior.cov * H.transpose();
  Matrix S = H * PHt + model.V;
  symmetrize(S);
  const Matrix K = spd_solve(S, PHt.transpose(), "innovation covariance").transpose();

  const auto m = model.meas_dim();
  const Vector predicted = H * prior.mean;
  Vector nu = Vector::Zero(m);
  Matrix spread = Matrix::Zero(m, m);
  for (const auto& wm : meas) {
    if (wm.z.size() != m) throw ContractViolation("measurement dimension mismatch");
    const Vector nu_k = wm.z - predicted;
    nu += wm.weight * nu_k;
    spread += wm.weight * nu_k * nu_k.transpose();
  }
  spread -= nu * nu.transpose();

  const Matrix I_KH = Matrix::Identity(prior.cov.rows(), prior.cov.cols()) - K * H;
  const Matrix P_correct = I_KH * prior.cov * I_KH.transpose() + K * model.V * K.transpose();

  GaussianBelief post;
  post.mean = prior.mean + K * nu;
  post.cov = clutter_weight * prior.cov + (1.0 - clutter_weight) * P_correct +
             K * spread * K.transpose();
  symmetrize(post.cov);
  return post;
}

GaussianBelief pmht_update(const GaussianBelief& prior, std::span<const WeightedMeasurement> meas,
                           const LinearModel& model) {
  check_belief(prior, model);
  double total = 0.0;
  Vector pooled = Vector::Zero(model.meas_dim());
  for (const auto& wm : meas) {
    if (wm.weight < 0) throw ContractViolation("pmht_update: negative weight");
    if (wm.z.size() != model.meas_dim()) throw ContractViolation("measurement dimension mismatch");
    total += wm.weight;
    pooled += wm.weight * wm.z;
  }
  if (!(total > 0)) return prior;
  pooled /= total;
  return gain_update(prior, pooled, model.H, model.V / total, true);
}

UpdateBatch build_update_batch(const Matrix& weights, double tau_weight) {
  UpdateBatch batch;
  for (Eigen::Index j = 0; j < weights.cols(); ++j) {
    for (Eigen::Index k = 0; k < weights.rows(); ++k) {
      if (weights(k, j) > tau_weight) {
        batch[static_cast<int>(j)].emplace_back(static_cast<int>(k), weights(k, j));
      }
    }
  }
  return batch;
}

}  // namespace pkf
