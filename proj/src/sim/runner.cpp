#include "pkf/sim/runner.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "pkf/assoc/assignment.hpp"
#include "pkf/assoc/weights.hpp"
#include "pkf/core/errors.hpp"
#include "pkf/core/models.hpp"
#include "pkf/filter/kalman.hpp"

namespace pkf::sim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Gated-out entries in the binary score matrix; far below any real
// log-likelihood, far above the range where Hungarian potentials lose precision.
constexpr double kGatedScore = -1e9;

struct Innovation {
  Eigen::LLT<Matrix> llt;
  Vector hx;
  double log_norm = 0.0;
};

Innovation innovation(const GaussianBelief& b, const LinearModel& model) {
  Innovation in;
  const Matrix s = model.H * b.cov * model.H.transpose() + model.V;
  in.llt.compute(s);
  if (in.llt.info() != Eigen::Success) throw NumericalError("innovation covariance not positive definite");
  in.hx = model.H * b.mean;
  const Matrix& l = in.llt.matrixL();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) logdet += 2.0 * std::log(l(i, i));
  in.log_norm = -0.5 * (static_cast<double>(s.rows()) * std::log(2.0 * std::numbers::pi) + logdet);
  return in;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::binary: return "binary";
    case Method::pmht: return "pmht";
    case Method::jpdaf: return "jpdaf";
    case Method::pkf: return "pkf";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods()) {
    if (to_string(m) == name) return m;
  }
  throw ContractViolation("unknown method '" + std::string(name) + "'");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::binary, Method::pmht, Method::jpdaf, Method::pkf};
  return methods;
}

void FilterConfig::validate() const {
  if (!(pos_process_var >= 0 && vel_process_var >= 0)) {
    throw ContractViolation("process variances must be nonnegative");
  }
  if (!(init_pos_var > 0 && init_vel_var > 0)) throw ContractViolation("initial variances must be positive");
  if (!(min_meas_var > 0)) throw ContractViolation("min_meas_var must be positive");
  if (!(gate_chi2 > 0)) throw ContractViolation("gate_chi2 must be positive");
  if (!(pkf_min_weight >= 0 && pkf_min_weight < 1)) throw ContractViolation("pkf_min_weight must be in [0, 1)");
  if (!(fail_threshold > 0)) throw ContractViolation("fail_threshold must be positive");
}

LinearModel FilterConfig::model(double meas_var) const {
  return point_cv_model(pos_process_var, vel_process_var, std::max(meas_var, min_meas_var));
}

bool FilterConfig::gated(Method m) const {
  switch (m) {
    case Method::binary: return gate_binary;
    case Method::pmht: return gate_pmht;
    case Method::jpdaf: return gate_jpdaf;
    case Method::pkf: return gate_pkf;
  }
  return true;
}

Matrix association_weights(const Matrix& log_q, Method method, double p_detect, double lambda) {
  std::vector<int> claimed;
  for (Eigen::Index k = 0; k < log_q.rows(); ++k) {
    if (log_q.cols() > 0 && log_q.row(k).maxCoeff() > kNegInf) claimed.push_back(static_cast<int>(k));
  }
  Matrix out = Matrix::Zero(log_q.rows(), log_q.cols());
  if (claimed.empty()) return out;
  Matrix sub(static_cast<Eigen::Index>(claimed.size()), log_q.cols());
  for (std::size_t i = 0; i < claimed.size(); ++i) sub.row(static_cast<Eigen::Index>(i)) = log_q.row(claimed[i]);
  const LikelihoodMatrix q = LikelihoodMatrix::from_log(sub);
  const WeightMatrix w = method == Method::pmht ? pmht_weights(q) : jpdaf_weights(q, p_detect, lambda);
  for (std::size_t i = 0; i < claimed.size(); ++i) out.row(claimed[i]) = w.w.row(static_cast<Eigen::Index>(i));
  return out;
}

TrackingReport run_tracker(const Scenario& scenario, Method method, const FilterConfig& filter) {
  filter.validate();
  const ScenarioConfig& cfg = scenario.config;
  const int n = cfg.n_objects;
  const int frames = static_cast<int>(scenario.frames.size());
  const LinearModel model = filter.model(cfg.meas_var);
  const bool gate = filter.gated(method);
  const bool coupled = filter.coupled && method == Method::pkf;

  TrackingReport report;
  report.method = method;
  std::vector<GaussianBelief> tracks;
  std::vector<bool> diverged(static_cast<std::size_t>(n), false);
  for (int j = 0; j < n; ++j) {
    GaussianBelief b{Vector::Zero(4), Matrix::Zero(4, 4)};
    b.mean.head(2) = scenario.frames.empty() ? Point(truth_position(cfg, j, 0))
                                             : scenario.frames[0].truth[static_cast<std::size_t>(j)];
    // Object count is fixed and known, so tracks start on the true state.
    b.mean.tail(2) = truth_velocity(cfg, j, 0);
    b.cov.diagonal() << filter.init_pos_var, filter.init_pos_var, filter.init_vel_var,
        filter.init_vel_var;
    tracks.push_back(std::move(b));
  }

  std::vector<double> err_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> update_ms;
  update_ms.reserve(static_cast<std::size_t>(frames));
  if (filter.keep_estimates) report.estimates.reserve(static_cast<std::size_t>(frames));

  auto record_frame = [&](int t) {
    const SimFrame& f = scenario.frames[static_cast<std::size_t>(t)];
    std::vector<Point> est;
    for (int j = 0; j < n; ++j) {
      const Point p = tracks[static_cast<std::size_t>(j)].mean.head(2);
      err_sum[static_cast<std::size_t>(j)] += (p - f.truth[static_cast<std::size_t>(j)]).norm();
      if (filter.keep_estimates) est.push_back(p);
    }
    if (filter.keep_estimates) report.estimates.push_back(std::move(est));
  };

  if (frames > 0) record_frame(0);
  for (int t = 1; t < frames; ++t) {
    const SimFrame& f = scenario.frames[static_cast<std::size_t>(t)];
    const int m = static_cast<int>(f.detections.size());
    std::vector<GaussianBelief> prior(tracks.size());
    for (int j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      prior[uj] = diverged[uj] ? tracks[uj] : predict(tracks[uj], model);
    }

    // Log-likelihood of every detection under every live track.
    Matrix log_q = Matrix::Constant(m, n, kNegInf);
    for (int j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (diverged[uj]) continue;
      const Innovation in = innovation(prior[uj], model);
      for (int k = 0; k < m; ++k) {
        const Vector nu = f.detections[static_cast<std::size_t>(k)].z - in.hx;
        const double d2 = in.llt.matrixL().solve(nu).squaredNorm();
        if (gate && d2 > filter.gate_chi2) continue;
        log_q(k, j) = in.log_norm - 0.5 * d2;
      }
    }
    auto z_of = [&](int k) -> Vector { return f.detections[static_cast<std::size_t>(k)].z; };

    std::vector<GaussianBelief> post = prior;
    double ms = 0.0;
    if (method == Method::binary) {
      Matrix scores = log_q.unaryExpr([](double v) { return v == kNegInf ? kGatedScore : v; });
      const MatchList matches = linear_assignment(scores, 0.5 * kGatedScore);
      const auto t0 = std::chrono::steady_clock::now();
      for (const auto& [k, j] : matches) post[static_cast<std::size_t>(j)] = kf_update(prior[static_cast<std::size_t>(j)], z_of(k), model);
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    } else {
      const Matrix w = association_weights(log_q, method, cfg.p_detect, cfg.lambda);
      const auto t0 = std::chrono::steady_clock::now();
      if (coupled) {
        GaussianBelief joint{Vector::Zero(4 * n), Matrix::Zero(4 * n, 4 * n)};
        for (int j = 0; j < n; ++j) {
          joint.mean.segment(4 * j, 4) = prior[static_cast<std::size_t>(j)].mean;
          joint.cov.block(4 * j, 4 * j, 4, 4) = prior[static_cast<std::size_t>(j)].cov;
        }
        std::vector<Vector> zs;
        zs.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) zs.push_back(z_of(k));
        const GaussianBelief out = pkf_update_joint(joint, zs, w, model, filter.pkf_min_weight);
        for (int j = 0; j < n; ++j) {
          post[static_cast<std::size_t>(j)] = {out.mean.segment(4 * j, 4), out.cov.block(4 * j, 4 * j, 4, 4)};
        }
      } else {
        std::vector<WeightedMeasurement> list;
        for (int j = 0; j < n; ++j) {
          const auto uj = static_cast<std::size_t>(j);
          if (diverged[uj]) continue;
          list.clear();
          const double floor = method == Method::pkf ? filter.pkf_min_weight : 0.0;
          double total = 0.0;
          for (int k = 0; k < m; ++k) {
            if (w(k, j) > floor) {
              list.push_back({z_of(k), w(k, j)});
              total += w(k, j);
            }
          }
          if (list.empty()) continue;
          switch (method) {
            case Method::pmht: post[uj] = pmht_update(prior[uj], list, model); break;
            case Method::jpdaf:
              post[uj] = jpdaf_update(prior[uj], list, std::max(0.0, 1.0 - total), model);
              break;
            default: post[uj] = pkf_update(prior[uj], list, model); break;
          }
        }
      }
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    update_ms.push_back(ms);

    for (int j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (diverged[uj]) continue;
      if (filter.check_health) report.health.record(post[uj]);
      if (!all_finite(post[uj])) {
        // Freeze at the last finite estimate; the track is reported as failed.
        diverged[uj] = true;
        continue;
      }
      tracks[uj] = std::move(post[uj]);
    }
    record_frame(t);
  }

  report.object_error.resize(static_cast<std::size_t>(n));
  report.failed.resize(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const double e = frames > 0 ? err_sum[uj] / frames : 0.0;
    report.object_error[uj] = e;
    report.failed[uj] = diverged[uj] || !(e <= filter.fail_threshold);
    report.failed_tracks += report.failed[uj] ? 1 : 0;
    report.diverged_tracks += diverged[uj] ? 1 : 0;
    total += e;
  }
  report.average_error = total / n;
  if (!update_ms.empty()) {
    double s = 0.0;
    for (double v : update_ms) s += v;
    report.mean_update_ms = s / static_cast<double>(update_ms.size());
    report.median_update_ms = median(update_ms);
  }
  return report;
}

}  // namespace pkf::sim
