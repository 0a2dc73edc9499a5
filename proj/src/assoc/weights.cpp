#include "pkf/assoc/weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "pkf/assoc/components.hpp"
#include "pkf/core/errors.hpp"
#include "pkf/core/log.hpp"

namespace pkf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Memory bound for the event tables: (larger side + 1) * 2^(smaller side).
constexpr double kMaxEventCells = 1 << 24;

// Uniform over the row's positive entries, or over every column when none.
void fill_uniform(Matrix& w, const Matrix& support, Eigen::Index k) {
  const Eigen::Index n = w.cols();
  if (n == 0) return;
  const auto positive = (support.row(k).array() > 0).count();
  if (positive == 0) {
    w.row(k).setConstant(1.0 / static_cast<double>(n));
    return;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    w(k, j) = support(k, j) > 0 ? 1.0 / static_cast<double>(positive) : 0.0;
  }
}

void finish_degenerate(WeightMatrix& out, const Matrix& support, const char* who) {
  long count = 0;
  for (Eigen::Index k = 0; k < out.w.rows(); ++k) {
    if (!out.degenerate_rows[k]) continue;
    ++count;
    fill_uniform(out.w, support, k);
    if (out.clutter) (*out.clutter)[k] = 0.0;
  }
  if (count > 0) {
    log::get().warn("{}: {} measurement row(s) had no feasible association; filled uniformly", who,
                    count);
  }
}

}  // namespace

LikelihoodMatrix::LikelihoodMatrix(const Matrix& raw) {
  if (!raw.allFinite() || (raw.size() > 0 && raw.minCoeff() < 0)) {
    throw ContractViolation("likelihoods must be finite and nonnegative");
  }
  scaled_ = raw;
  log_scales_ = Vector::Zero(raw.rows());
  for (Eigen::Index k = 0; k < raw.rows(); ++k) {
    if (raw.cols() == 0) break;
    const double mx = raw.row(k).maxCoeff();
    if (mx > 0) {
      scaled_.row(k) /= mx;
      log_scales_[k] = std::log(mx);
    }
  }
}

LikelihoodMatrix LikelihoodMatrix::from_log(const Matrix& log_q) {
  LikelihoodMatrix q;
  q.scaled_ = Matrix::Zero(log_q.rows(), log_q.cols());
  q.log_scales_ = Vector::Zero(log_q.rows());
  for (Eigen::Index k = 0; k < log_q.rows(); ++k) {
    if (log_q.cols() == 0) break;
    const double mx = log_q.row(k).maxCoeff();
    if (std::isnan(mx) || mx == std::numeric_limits<double>::infinity()) {
      throw ContractViolation("log-likelihoods must not be NaN or +inf");
    }
    if (mx == kNegInf) continue;
    q.log_scales_[k] = mx;
    q.scaled_.row(k) = (log_q.row(k).array() - mx).exp();
  }
  return q;
}

Matrix LikelihoodMatrix::raw() const {
  Matrix r = scaled_;
  for (Eigen::Index k = 0; k < r.rows(); ++k) r.row(k) *= std::exp(log_scales_[k]);
  return r;
}

LikelihoodMatrix LikelihoodMatrix::transposed() const {
  Matrix log_q(scaled_.rows(), scaled_.cols());
  for (Eigen::Index k = 0; k < scaled_.rows(); ++k) {
    for (Eigen::Index j = 0; j < scaled_.cols(); ++j) {
      log_q(k, j) = scaled_(k, j) > 0 ? std::log(scaled_(k, j)) + log_scales_[k] : kNegInf;
    }
  }
  return from_log(log_q.transpose());
}

bool WeightMatrix::any_degenerate() const {
  return std::find(degenerate_rows.begin(), degenerate_rows.end(), true) != degenerate_rows.end();
}

WeightMatrix pkf_weights(const LikelihoodMatrix& q, const WeightOptions& opts) {
  const Eigen::Index m = q.rows();
  const Eigen::Index n = q.cols();
  if (m > n) {
    std::ostringstream os;
    os << "pkf_weights needs at most as many measurements as objects (got " << m << "x" << n
       << "); use pkf_block_weights";
    throw ContractViolation(os.str());
  }
  const Matrix& s = q.scaled();
  WeightMatrix out;
  out.mode = WeightMode::pkf;
  out.w = Matrix::Zero(m, n);
  out.degenerate_rows.assign(static_cast<std::size_t>(m), false);

  // The permanent of a block-diagonal matrix is the product of the block
  // permanents, and the other blocks' factor cancels in each row's
  // normalization, so components are handled independently.
  for (const Component& c : connected_components(s)) {
    if (c.rows.empty()) continue;
    if (c.rows.size() > c.cols.size()) {
      for (int k : c.rows) out.degenerate_rows[k] = true;
      continue;
    }
    const Matrix block = submatrix(s, c.rows, c.cols);
    const PermanentMinors pm = permanent_minors(block, opts.size_cap);
    for (std::size_t lk = 0; lk < c.rows.size(); ++lk) {
      const auto k = static_cast<Eigen::Index>(lk);
      const Eigen::RowVectorXd unnorm = block.row(k).cwiseProduct(pm.minors.row(k));
      const double total = unnorm.sum();
      if (!(total > 0)) {
        out.degenerate_rows[c.rows[lk]] = true;
        continue;
      }
      for (std::size_t lj = 0; lj < c.cols.size(); ++lj) {
        out.w(c.rows[lk], c.cols[lj]) = unnorm[static_cast<Eigen::Index>(lj)] / total;
      }
    }
  }
  finish_degenerate(out, s, "pkf_weights");
  return out;
}

WeightMatrix pkf_block_weights(const LikelihoodMatrix& q, const WeightOptions& opts) {
  if (q.rows() <= q.cols()) return pkf_weights(q, opts);
  WeightMatrix t = pkf_weights(q.transposed(), opts);
  WeightMatrix out;
  out.mode = WeightMode::pkf;
  out.w = t.w.transpose();
  out.degenerate_rows.assign(static_cast<std::size_t>(q.rows()), false);
  return out;
}

namespace {

// Marginals of the clutter-aware association events inside one connected
// component. a(k, j) <= 1 are the likelihoods and c[k] <= 1 the clutter
// alternative of row k after a common per-row rescale (each event picks
// exactly one alternative per row, so the rescale cancels). Events are
// summed with a forward-backward pass over subsets of the smaller side;
// together the passes give every minor of the permanent of [a | diag(c)]
// weighted by the detection prior.
struct EventMarginals {
  Matrix w;
  Vector clutter;
  bool ok = false;
};

EventMarginals component_marginals(const Matrix& a, const Vector& c, double p_detect) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const double miss = 1.0 - p_detect;
  EventMarginals out{Matrix::Zero(m, n), Vector::Zero(m), false};
  const bool over_objects = n <= m;
  const int bits = over_objects ? n : m;
  const int steps = over_objects ? m : n;
  const std::size_t states = std::size_t{1} << bits;

  // back[t][S]: total weight of the remaining steps t.. given used set S.
  std::vector<double> back(static_cast<std::size_t>(steps + 1) * states, 0.0);
  auto b = [&](int t, std::size_t set) -> double& { return back[static_cast<std::size_t>(t) * states + set]; };
  for (std::size_t set = 0; set < states; ++set) {
    const int used = std::popcount(set);
    double fin = 1.0;
    if (over_objects) {
      // Every object is detected (in S) or missed.
      fin = std::pow(p_detect, used) * std::pow(miss, n - used);
    } else {
      // Measurements left unused are clutter.
      for (int k = 0; k < m; ++k) {
        if (!((set >> k) & 1U)) fin *= c[k];
      }
    }
    b(steps, set) = fin;
  }
  for (int t = steps - 1; t >= 0; --t) {
    for (std::size_t set = 0; set < states; ++set) {
      double acc;
      if (over_objects) {
        acc = c[t] * b(t + 1, set);
        for (int j = 0; j < n; ++j) {
          if (!((set >> j) & 1U) && a(t, j) > 0) acc += a(t, j) * b(t + 1, set | (std::size_t{1} << j));
        }
      } else {
        acc = miss * b(t + 1, set);
        for (int k = 0; k < m; ++k) {
          if (!((set >> k) & 1U) && a(k, t) > 0) {
            acc += p_detect * a(k, t) * b(t + 1, set | (std::size_t{1} << k));
          }
        }
      }
      b(t, set) = acc;
    }
  }
  const double total = b(0, 0);
  if (!(total > 0) || !std::isfinite(total)) return out;

  std::vector<double> fwd(states, 0.0), next(states, 0.0);
  fwd[0] = 1.0;
  for (int t = 0; t < steps; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t set = 0; set < states; ++set) {
      const double f = fwd[set];
      if (f == 0.0) continue;
      if (over_objects) {
        const double stay = f * c[t];
        out.clutter[t] += stay * b(t + 1, set);
        next[set] += stay;
        for (int j = 0; j < n; ++j) {
          if ((set >> j) & 1U || !(a(t, j) > 0)) continue;
          const std::size_t to = set | (std::size_t{1} << j);
          const double step = f * a(t, j);
          out.w(t, j) += step * b(t + 1, to);
          next[to] += step;
        }
      } else {
        next[set] += f * miss;
        for (int k = 0; k < m; ++k) {
          if ((set >> k) & 1U || !(a(k, t) > 0)) continue;
          const std::size_t to = set | (std::size_t{1} << k);
          const double step = f * p_detect * a(k, t);
          out.w(k, t) += step * b(t + 1, to);
          next[to] += step;
        }
      }
    }
    fwd.swap(next);
  }
  if (!over_objects) {
    for (std::size_t set = 0; set < states; ++set) {
      if (fwd[set] == 0.0) continue;
      const double mass = fwd[set] * b(steps, set);
      for (int k = 0; k < m; ++k) {
        if (!((set >> k) & 1U)) out.clutter[k] += mass;
      }
    }
  }
  out.w /= total;
  out.clutter /= total;
  out.ok = true;
  return out;
}

}  // namespace

WeightMatrix jpdaf_weights(const LikelihoodMatrix& q, double p_detect, double clutter_density,
                           const WeightOptions& opts) {
  if (!(p_detect > 0 && p_detect <= 1)) throw ContractViolation("p_detect must be in (0, 1]");
  if (!(clutter_density > 0)) throw ContractViolation("clutter density must be positive");

  const Eigen::Index m = q.rows();
  const Eigen::Index n = q.cols();
  const Matrix& s = q.scaled();
  const Vector& log_scale = q.log_row_scales();
  const double log_lambda = std::log(clutter_density);

  WeightMatrix out;
  out.mode = WeightMode::jpdaf;
  out.w = Matrix::Zero(m, n);
  out.clutter = Vector::Zero(m);
  out.degenerate_rows.assign(static_cast<std::size_t>(m), false);
  Vector& clutter = *out.clutter;

  // Events factor over connected components: the exponents of lambda, p_D
  // and 1 - p_D are additive across blocks and each block's cross terms are
  // zero.
  for (const Component& c : connected_components(s)) {
    const int cm = static_cast<int>(c.rows.size());
    const int cn = static_cast<int>(c.cols.size());
    if (cm == 0) continue;
    if (cn == 0) {
      for (int k : c.rows) clutter[k] = 1.0;
      continue;
    }
    const int small = std::min(cm, cn);
    const double cells = static_cast<double>(std::max(cm, cn) + 1) * std::ldexp(1.0, small);
    if (small > opts.size_cap || cells > kMaxEventCells) {
      std::ostringstream os;
      os << "jpdaf_weights: component of " << cm << " measurements x " << cn
         << " objects exceeds the size cap " << opts.size_cap;
      throw CapacityError(os.str());
    }
    Matrix block = submatrix(s, c.rows, c.cols);
    // Row k's clutter alternative is lambda / s_k against likelihoods scaled
    // by 1 / s_k; rescale the row so its largest alternative is 1.
    Vector alt(cm);
    for (int lk = 0; lk < cm; ++lk) {
      const double log_c = log_lambda - log_scale[c.rows[lk]];
      if (log_c > 0) {
        block.row(lk) *= std::exp(-log_c);
        alt[lk] = 1.0;
      } else {
        alt[lk] = std::exp(log_c);
      }
    }
    const EventMarginals em = component_marginals(block, alt, p_detect);
    if (!em.ok) {
      for (int k : c.rows) out.degenerate_rows[k] = true;
      continue;
    }
    for (int lk = 0; lk < cm; ++lk) {
      clutter[c.rows[lk]] = em.clutter[lk];
      for (int lj = 0; lj < cn; ++lj) out.w(c.rows[lk], c.cols[lj]) = em.w(lk, lj);
    }
  }
  finish_degenerate(out, s, "jpdaf_weights");
  return out;
}

WeightMatrix pmht_weights(const LikelihoodMatrix& q, double p_detect, double clutter_density) {
  if (!(p_detect > 0 && p_detect <= 1)) throw ContractViolation("p_detect must be in (0, 1]");
  if (clutter_density < 0) throw ContractViolation("clutter density must be nonnegative");
  const Eigen::Index m = q.rows();
  const Eigen::Index n = q.cols();
  const Matrix& s = q.scaled();
  WeightMatrix out;
  out.mode = WeightMode::pmht;
  out.w = Matrix::Zero(m, n);
  if (clutter_density > 0) out.clutter = Vector::Zero(m);
  out.degenerate_rows.assign(static_cast<std::size_t>(m), false);
  for (Eigen::Index k = 0; k < m; ++k) {
    // Divide numerator and denominator by the row scale.
    const double clutter_term =
        clutter_density > 0 ? clutter_density * std::exp(-q.log_row_scales()[k]) : 0.0;
    const double den = p_detect * s.row(k).sum() + clutter_term;
    if (!(den > 0)) {
      out.degenerate_rows[k] = true;
      continue;
    }
    if (std::isinf(den)) {
      (*out.clutter)[k] = 1.0;
      continue;
    }
    out.w.row(k) = p_detect * s.row(k) / den;
    if (out.clutter) (*out.clutter)[k] = clutter_term / den;
  }
  finish_degenerate(out, s, "pmht_weights");
  return out;
}

}  // namespace pkf
