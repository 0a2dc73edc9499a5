#pragma once

#include "pkf/core/types.hpp"

namespace pkf {

inline constexpr double kDefaultIouAlpha = 2.0;

/// exp(-alpha / iou); zero when iou is zero.
double likelihood_from_iou(double iou_score, double alpha = kDefaultIouAlpha);

/// Elementwise likelihood_from_iou. Works for any positive association score,
/// not just IoU, so externally fused score matrices can be plugged in.
Matrix likelihood_from_scores(const Matrix& scores, double alpha = kDefaultIouAlpha);

/// log N(z; H mu, H Sigma H^T + V). Throws NumericalError when the innovation
/// covariance is singular.
double gaussian_log_likelihood(const Vector& z, const GaussianBelief& belief,
                               const LinearModel& model);

double gaussian_likelihood(const Vector& z, const GaussianBelief& belief,
                           const LinearModel& model);

}  // namespace pkf
