#include "pkf/assoc/likelihood.hpp"

#include <cmath>
#include <numbers>

#include "pkf/core/errors.hpp"
#include "pkf/core/linalg.hpp"

namespace pkf {

double likelihood_from_iou(double iou_score, double alpha) {
  if (!(iou_score > 0)) return 0.0;
  return std::exp(-alpha / iou_score);
}

Matrix likelihood_from_scores(const Matrix& scores, double alpha) {
  return scores.unaryExpr([alpha](double s) { return likelihood_from_iou(s, alpha); });
}

double gaussian_log_likelihood(const Vector& z, const GaussianBelief& belief,
                               const LinearModel& model) {
  const Matrix& H = model.H;
  if (z.size() != H.rows() || belief.mean.size() != H.cols()) {
    throw ContractViolation("gaussian_likelihood: dimension mismatch");
  }
  const Vector nu = z - H * belief.mean;
  const Matrix S = H * belief.cov * H.transpose() + model.V;
  const double maha = nu.dot(spd_solve(S, nu, "innovation covariance").col(0));
  const double logdet = spd_logdet(S, "innovation covariance");
  const double m = static_cast<double>(z.size());
  return -0.5 * (m * std::log(2.0 * std::numbers::pi) + logdet + maha);
}

double gaussian_likelihood(const Vector& z, const GaussianBelief& belief,
                           const LinearModel& model) {
  return std::exp(gaussian_log_likelihood(z, belief, model));
}

}  // namespace pkf
