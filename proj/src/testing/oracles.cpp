#include "pkf/testing/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pkf/assoc/assignment.hpp"
#include "pkf/assoc/permanent.hpp"
#include "pkf/assoc/weights.hpp"

namespace pkf::testing {

namespace {

void injections_rec(int row, int rows, int cols, std::vector<int>& assign,
                    std::vector<char>& used,
                    const std::function<void(const std::vector<int>&)>& fn) {
  if (row == rows) {
    fn(assign);
    return;
  }
  for (int j = 0; j < cols; ++j) {
    if (used[j]) continue;
    used[j] = 1;
    assign[row] = j;
    injections_rec(row + 1, rows, cols, assign, used, fn);
    used[j] = 0;
  }
}

}  // namespace

void for_each_injection(int rows, int cols,
                        const std::function<void(const std::vector<int>&)>& fn) {
  if (rows > cols) return;
  std::vector<int> assign(rows, -1);
  std::vector<char> used(cols, 0);
  injections_rec(0, rows, cols, assign, used, fn);
}

double brute_force_permanent(const Matrix& a) {
  const Matrix m = a.rows() <= a.cols() ? a : Matrix(a.transpose());
  long double total = 0.0L;
  for_each_injection(static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                     [&](const std::vector<int>& f) {
                       long double prod = 1.0L;
                       for (std::size_t k = 0; k < f.size(); ++k) {
                         prod *= m(static_cast<Eigen::Index>(k), f[k]);
                       }
                       total += prod;
                     });
  return static_cast<double>(total);
}

Matrix brute_force_pkf_weights(const Matrix& q) {
  Matrix acc = Matrix::Zero(q.rows(), q.cols());
  for_each_injection(static_cast<int>(q.rows()), static_cast<int>(q.cols()),
                     [&](const std::vector<int>& f) {
                       double prod = 1.0;
                       for (std::size_t k = 0; k < f.size(); ++k) {
                         prod *= q(static_cast<Eigen::Index>(k), f[k]);
                       }
                       for (std::size_t k = 0; k < f.size(); ++k) {
                         acc(static_cast<Eigen::Index>(k), f[k]) += prod;
                       }
                     });
  for (Eigen::Index k = 0; k < acc.rows(); ++k) {
    const double s = acc.row(k).sum();
    if (s > 0) acc.row(k) /= s;
  }
  return acc;
}

EventWeights enumerate_jpdaf_weights(const Matrix& q, double p_detect, double clutter_density) {
  const int m = static_cast<int>(q.rows());
  const int n = static_cast<int>(q.cols());
  EventWeights out{Matrix::Zero(m, n), Vector::Zero(m)};
  // assign[k] == -1 means clutter.
  std::vector<int> assign(m, -1);
  std::vector<char> used(n, 0);
  double total = 0.0;
  std::function<void(int)> rec = [&](int k) {
    if (k == m) {
      int clutter = 0;
      double prod = 1.0;
      for (int i = 0; i < m; ++i) {
        if (assign[i] < 0) {
          ++clutter;
        } else {
          prod *= q(i, assign[i]);
        }
      }
      const int detected = m - clutter;
      const double prior = std::pow(clutter_density, clutter) * std::pow(p_detect, detected) *
                           std::pow(1.0 - p_detect, n - detected);
      const double p = prior * prod;
      total += p;
      for (int i = 0; i < m; ++i) {
        if (assign[i] < 0) {
          out.clutter[i] += p;
        } else {
          out.w(i, assign[i]) += p;
        }
      }
      return;
    }
    assign[k] = -1;
    rec(k + 1);
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      assign[k] = j;
      rec(k + 1);
      used[j] = 0;
    }
    assign[k] = -1;
  };
  rec(0);
  if (total > 0) {
    out.w /= total;
    out.clutter /= total;
  }
  return out;
}

GaussianBelief info_form_update(const GaussianBelief& prior,
                                std::span<const WeightedMeasurement> meas,
                                const LinearModel& model) {
  if (meas.empty()) return prior;
  const Eigen::LDLT<Matrix> prior_ldlt(prior.cov);
  Matrix info = prior_ldlt.solve(Matrix::Identity(prior.cov.rows(), prior.cov.cols()));
  Vector info_vec = prior_ldlt.solve(prior.mean);
  const Eigen::LDLT<Matrix> v_ldlt(model.V);
  const Matrix HtVinv = v_ldlt.solve(model.H).transpose();
  for (const auto& wm : meas) {
    info += wm.weight * HtVinv * model.H;
    info_vec += wm.weight * HtVinv * wm.z;
  }
  info = 0.5 * (info + info.transpose());
  const Eigen::LDLT<Matrix> post_ldlt(info);
  GaussianBelief post;
  post.mean = post_ldlt.solve(info_vec);
  post.cov = post_ldlt.solve(Matrix::Identity(info.rows(), info.cols()));
  post.cov = 0.5 * (post.cov + post.cov.transpose());
  return post;
}

GaussianBelief jpdaf_mixture_moments(const GaussianBelief& prior,
                                     std::span<const WeightedMeasurement> meas,
                                     double clutter_weight, const LinearModel& model) {
  // Components: the prior itself (no detection) and one standard Kalman
  // posterior per measurement, computed with explicit inverses.
  const Matrix S = model.H * prior.cov * model.H.transpose() + model.V;
  const Matrix K = prior.cov * model.H.transpose() * S.inverse();
  const Matrix P_k = prior.cov - K * S * K.transpose();
  std::vector<std::pair<double, Vector>> means;
  means.emplace_back(clutter_weight, prior.mean);
  for (const auto& wm : meas) {
    means.emplace_back(wm.weight, Vector(prior.mean + K * (wm.z - model.H * prior.mean)));
  }
  Vector mean = Vector::Zero(prior.mean.size());
  for (const auto& [w, mu] : means) mean += w * mu;
  Matrix cov = clutter_weight * prior.cov;
  for (const auto& wm : meas) cov += wm.weight * P_k;
  for (const auto& [w, mu] : means) cov += w * (mu - mean) * (mu - mean).transpose();
  return {mean, cov};
}

double direct_gaussian_density(const Vector& x, const Vector& mean, const Matrix& cov) {
  const Vector d = x - mean;
  const double quad = d.transpose() * cov.inverse() * d;
  const double norm =
      std::pow(2.0 * std::numbers::pi, static_cast<double>(x.size()) / 2.0) *
      std::sqrt(cov.determinant());
  return std::exp(-0.5 * quad) / norm;
}

double brute_force_best_assignment(const Matrix& scores) {
  const bool t = scores.rows() > scores.cols();
  const Matrix s = t ? Matrix(scores.transpose()) : scores;
  double best = -std::numeric_limits<double>::infinity();
  for_each_injection(static_cast<int>(s.rows()), static_cast<int>(s.cols()),
                     [&](const std::vector<int>& f) {
                       double tot = 0.0;
                       for (std::size_t k = 0; k < f.size(); ++k) {
                         tot += s(static_cast<Eigen::Index>(k), f[k]);
                       }
                       best = std::max(best, tot);
                     });
  return s.rows() == 0 ? 0.0 : best;
}

double total_score(const Matrix& scores, const MatchList& matches) {
  double t = 0.0;
  for (const auto& [k, j] : matches) t += scores(k, j);
  return t;
}

Matrix random_nonnegative(std::mt19937_64& rng, int rows, int cols, double zero_prob) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix a(rows, cols);
  for (int k = 0; k < rows; ++k) {
    for (int j = 0; j < cols; ++j) a(k, j) = u(rng) < zero_prob ? 0.0 : u(rng);
  }
  return a;
}

Matrix random_spd(std::mt19937_64& rng, int n, double min_eig, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  Matrix s = scale * a * a.transpose() / n + min_eig * Matrix::Identity(n, n);
  return 0.5 * (s + s.transpose());
}

LinearModel random_model(std::mt19937_64& rng, int n, int m) {
  std::normal_distribution<double> g(0.0, 1.0);
  LinearModel model;
  model.F = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) model.F(i, j) += 0.2 * g(rng);
  }
  model.G = Matrix::Zero(n, 1);
  model.W = random_spd(rng, n, 0.05, 0.2);
  model.H = Matrix(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) model.H(i, j) = g(rng);
  }
  model.V = random_spd(rng, m, 0.2, 1.0);
  return model;
}

GaussianBelief random_belief(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  GaussianBelief b;
  b.mean = Vector(n);
  for (int i = 0; i < n; ++i) b.mean[i] = 3.0 * g(rng);
  b.cov = random_spd(rng, n, 0.1, 2.0);
  return b;
}

double relative_error(const Matrix& got, const Matrix& want) {
  const double denom = std::max(1.0, want.cwiseAbs().maxCoeff());
  if (got.rows() != want.rows() || got.cols() != want.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (got - want).cwiseAbs().maxCoeff() / denom;
}

namespace {

void record(SuiteResult& r, double err, double tol) {
  ++r.cases;
  if (!(err <= tol)) ++r.failures;
  r.max_error = std::max(r.max_error, std::isnan(err) ? std::numeric_limits<double>::infinity() : err);
}

}  // namespace

SuiteResult permanent_suite(std::uint64_t seed, const PermanentFn& permanent_under_test) {
  SuiteResult r{"permanent vs injection enumeration"};
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= 7; ++n) {
    for (int m = 1; m <= n; ++m) {
      for (int rep = 0; rep < 3; ++rep) {
        const Matrix a = random_nonnegative(rng, m, n);
        const double want = brute_force_permanent(a);
        const double got = permanent_under_test(a);
        record(r, std::abs(got - want) / std::max(std::abs(want), 1e-300), 1e-10);
      }
    }
  }
  return r;
}

SuiteResult pkf_weight_suite(std::uint64_t seed) {
  SuiteResult r{"pkf weights vs association enumeration"};
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= n; ++m) {
      for (int rep = 0; rep < 4; ++rep) {
        const Matrix q = random_nonnegative(rng, m, n, 0.2);
        const Matrix want = brute_force_pkf_weights(q);
        bool feasible = true;
        for (Eigen::Index k = 0; k < want.rows(); ++k) feasible &= want.row(k).sum() > 0;
        if (!feasible) continue;
        const WeightMatrix got = pkf_weights(LikelihoodMatrix(q));
        record(r, relative_error(got.w, want), 1e-10);
      }
    }
  }
  return r;
}

SuiteResult jpdaf_weight_suite(std::uint64_t seed) {
  SuiteResult r{"jpdaf weights vs event enumeration"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pd(0.5, 0.99), lam(0.05, 2.0);
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      for (int rep = 0; rep < 3; ++rep) {
        const Matrix q = random_nonnegative(rng, m, n, 0.2);
        const double p = pd(rng);
        const double l = lam(rng);
        const EventWeights want = enumerate_jpdaf_weights(q, p, l);
        const WeightMatrix got = jpdaf_weights(LikelihoodMatrix(q), p, l);
        record(r, std::max(relative_error(got.w, want.w), relative_error(*got.clutter, want.clutter)),
               1e-10);
      }
    }
  }
  return r;
}

SuiteResult update_suite(std::uint64_t seed) {
  SuiteResult r{"pkf update vs information form"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 7), count(1, 4);
  std::uniform_real_distribution<double> weight(0.25, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = dim(rng);
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    const LinearModel model = random_model(rng, n, m);
    const GaussianBelief prior = random_belief(rng, n);
    std::vector<WeightedMeasurement> meas;
    const int c = count(rng);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int k = 0; k < c; ++k) {
      Vector z = model.H * prior.mean;
      for (int i = 0; i < m; ++i) z[i] += g(rng);
      meas.push_back({z, weight(rng)});
    }
    const GaussianBelief got = pkf_update(prior, meas, model);
    const GaussianBelief want = info_form_update(prior, meas, model);
    record(r, std::max(relative_error(got.mean, want.mean), relative_error(got.cov, want.cov)),
           1e-8);
  }
  return r;
}

SuiteResult assignment_suite(std::uint64_t seed) {
  SuiteResult r{"assignment vs exhaustive search"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, 6);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = size(rng);
    const int n = size(rng);
    Matrix s(m, n);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < n; ++j) s(k, j) = g(rng);
    }
    const double want = brute_force_best_assignment(s);
    const double got = total_score(s, linear_assignment(s));
    record(r, std::abs(got - want), 1e-9);
  }
  return r;
}

}  // namespace pkf::testing
