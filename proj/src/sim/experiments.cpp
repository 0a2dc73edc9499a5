#include "pkf/sim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "pkf/assoc/weights.hpp"
#include "pkf/core/errors.hpp"
#include "pkf/filter/kalman.hpp"

namespace pkf::sim {

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

MethodSummary summarize(Method method, const std::vector<TrackingReport>& runs, int n_objects) {
  MethodSummary s;
  s.method = method;
  s.object_error.assign(static_cast<std::size_t>(n_objects), 0.0);
  std::vector<double> avgs, times;
  for (const TrackingReport& r : runs) {
    for (int j = 0; j < n_objects; ++j) {
      s.object_error[static_cast<std::size_t>(j)] += r.object_error[static_cast<std::size_t>(j)];
    }
    avgs.push_back(r.average_error);
    times.push_back(r.median_update_ms);
    s.mean_failed += r.failed_tracks;
    s.diverged += r.diverged_tracks;
    s.health += r.health;
  }
  const double count = static_cast<double>(runs.size());
  if (count == 0) return s;
  for (double& e : s.object_error) e /= count;
  double sum = 0.0;
  for (double a : avgs) sum += a;
  s.average_error = sum / count;
  double var = 0.0;
  for (double a : avgs) var += (a - s.average_error) * (a - s.average_error);
  s.std_error = count > 1 ? std::sqrt(var / (count - 1)) : 0.0;
  s.mean_failed /= count;
  s.median_update_ms = median_of(times);
  return s;
}

}  // namespace

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

const MethodSummary& BatchResult::summary(Method m) const {
  for (const MethodSummary& s : methods) {
    if (s.method == m) return s;
  }
  throw ContractViolation("method '" + std::string(to_string(m)) + "' not in batch");
}

BatchResult run_batch(const ScenarioConfig& base, const std::vector<Method>& methods,
                      const FilterConfig& filter, int n_seeds, int threads) {
  if (n_seeds < 1) throw ContractViolation("n_seeds must be at least 1");
  base.validate();
  filter.validate();
  BatchResult out;
  out.base = base;
  for (int i = 0; i < n_seeds; ++i) out.seeds.push_back(base.seed + static_cast<std::uint64_t>(i));
  const int nm = static_cast<int>(methods.size());
  out.runs.assign(methods.size(), std::vector<TrackingReport>(static_cast<std::size_t>(n_seeds)));
  parallel_for(n_seeds, threads, [&](int i) {
    ScenarioConfig c = base;
    c.seed = out.seeds[static_cast<std::size_t>(i)];
    const Scenario sc = generate_scenario(c);
    for (int mi = 0; mi < nm; ++mi) {
      out.runs[static_cast<std::size_t>(mi)][static_cast<std::size_t>(i)] =
          run_tracker(sc, methods[static_cast<std::size_t>(mi)], filter);
    }
  });
  for (int mi = 0; mi < nm; ++mi) {
    out.methods.push_back(summarize(methods[static_cast<std::size_t>(mi)],
                                    out.runs[static_cast<std::size_t>(mi)], base.n_objects));
  }
  return out;
}

std::vector<double> default_noise_levels() {
  std::vector<double> levels;
  for (int i = 0; i <= 11; ++i) levels.push_back(0.2 + 0.05 * i);
  return levels;
}

ScenarioConfig crowded_sweep_scenario() {
  ScenarioConfig c;
  c.n_objects = 10;
  c.p_detect = 0.95;
  c.amplitude = 10.0;
  return c;
}

std::vector<SweepRow> noise_sweep(const ScenarioConfig& base, const std::vector<double>& levels,
                                  const std::vector<Method>& methods, const FilterConfig& filter,
                                  int n_seeds, int threads) {
  std::vector<SweepRow> rows;
  for (double level : levels) {
    ScenarioConfig c = base;
    c.meas_var = level;
    const BatchResult b = run_batch(c, methods, filter, n_seeds, threads);
    for (const MethodSummary& s : b.methods) {
      rows.push_back({level, s.method, s.average_error, s.std_error, s.mean_failed, s.health});
    }
  }
  return rows;
}

const std::vector<std::string>& bench_methods() {
  static const std::vector<std::string> names{"kf", "pmht", "jpdaf", "pkf"};
  return names;
}

std::vector<int> default_bench_counts() { return {3, 5, 10, 20}; }

namespace {

struct RecordedTrack {
  GaussianBelief prior;
  std::vector<WeightedMeasurement> jpdaf;  // clutter-aware weights
  double clutter = 1.0;
  std::vector<WeightedMeasurement> pmht;
};

using RecordedFrame = std::vector<RecordedTrack>;

// Replays a PKF run and keeps the per-track update inputs of every frame.
std::vector<RecordedFrame> record_inputs(const Scenario& sc, const FilterConfig& filter) {
  const ScenarioConfig& cfg = sc.config;
  const LinearModel model = filter.model(cfg.meas_var);
  const int n = cfg.n_objects;
  std::vector<GaussianBelief> tracks;
  for (int j = 0; j < n; ++j) {
    GaussianBelief b{Vector::Zero(4), Matrix::Zero(4, 4)};
    b.mean.head(2) = sc.frames[0].truth[static_cast<std::size_t>(j)];
    b.cov.diagonal() << filter.init_pos_var, filter.init_pos_var, filter.init_vel_var,
        filter.init_vel_var;
    tracks.push_back(b);
  }
  std::vector<RecordedFrame> out;
  for (std::size_t t = 1; t < sc.frames.size(); ++t) {
    const SimFrame& f = sc.frames[t];
    const int m = static_cast<int>(f.detections.size());
    RecordedFrame rf(static_cast<std::size_t>(n));
    Matrix log_q = Matrix::Constant(m, n, -std::numeric_limits<double>::infinity());
    for (int j = 0; j < n; ++j) {
      RecordedTrack& rt = rf[static_cast<std::size_t>(j)];
      rt.prior = predict(tracks[static_cast<std::size_t>(j)], model);
      const Matrix s = model.H * rt.prior.cov * model.H.transpose() + model.V;
      const Eigen::LLT<Matrix> llt(s);
      const double log_norm = -std::log(2.0 * std::numbers::pi) - std::log(llt.matrixL().determinant());
      for (int k = 0; k < m; ++k) {
        const Vector nu = f.detections[static_cast<std::size_t>(k)].z - model.H * rt.prior.mean;
        const double d2 = llt.matrixL().solve(nu).squaredNorm();
        if (d2 <= filter.gate_chi2) log_q(k, j) = log_norm - 0.5 * d2;
      }
    }
    const Matrix wj = association_weights(log_q, Method::jpdaf, cfg.p_detect, cfg.lambda);
    const Matrix wp = association_weights(log_q, Method::pmht, cfg.p_detect, cfg.lambda);
    for (int j = 0; j < n; ++j) {
      RecordedTrack& rt = rf[static_cast<std::size_t>(j)];
      double total = 0.0;
      for (int k = 0; k < m; ++k) {
        const Vector z = f.detections[static_cast<std::size_t>(k)].z;
        if (wj(k, j) > 0) {
          rt.jpdaf.push_back({z, wj(k, j)});
          total += wj(k, j);
        }
        if (wp(k, j) > 0) rt.pmht.push_back({z, wp(k, j)});
      }
      rt.clutter = std::max(0.0, 1.0 - total);
      tracks[static_cast<std::size_t>(j)] =
          rt.jpdaf.empty() ? rt.prior : pkf_update(rt.prior, rt.jpdaf, model);
    }
    out.push_back(std::move(rf));
  }
  return out;
}

// Runs one method's updates for every track of a frame.
void update_frame(const std::string& method, const RecordedFrame& frame, const LinearModel& model,
                  std::vector<GaussianBelief>& sink) {
  sink.clear();
  for (const RecordedTrack& rt : frame) {
    if (method == "kf") {
      if (rt.jpdaf.empty()) {
        sink.push_back(rt.prior);
        continue;
      }
      const auto best = std::max_element(rt.jpdaf.begin(), rt.jpdaf.end(),
                                         [](const auto& a, const auto& b) { return a.weight < b.weight; });
      sink.push_back(kf_update(rt.prior, best->z, model));
    } else if (method == "pmht") {
      sink.push_back(pmht_update(rt.prior, rt.pmht, model));
    } else if (method == "jpdaf") {
      sink.push_back(jpdaf_update(rt.prior, rt.jpdaf, rt.clutter, model));
    } else {
      sink.push_back(pkf_update(rt.prior, rt.jpdaf, model));
    }
  }
}

}  // namespace

void tile_groups(ScenarioConfig& c, int group, double spacing) {
  if (group < 1 || !(spacing > 0)) throw ContractViolation("tile_groups needs group >= 1 and spacing > 0");
  const int n = c.n_objects;
  const int groups = (n + group - 1) / group;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(groups))));
  c.phases.assign(static_cast<std::size_t>(n), 0.0);
  c.centers.assign(static_cast<std::size_t>(n), Point::Zero());
  for (int j = 0; j < n; ++j) {
    const int g = j / group;
    const int size = std::min(group, n - g * group);
    c.phases[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * (j % group) / size;
    c.centers[static_cast<std::size_t>(j)] = Point(spacing * (g % cols), spacing * (g / cols));
  }
}

std::vector<BenchRow> bench_update(const ScenarioConfig& base, const std::vector<int>& counts,
                                   const FilterConfig& filter, const BenchOptions& opts) {
  if (opts.frames < 2 || opts.repeats < 1) throw ContractViolation("bench needs frames >= 2 and repeats >= 1");
  std::vector<BenchRow> rows;
  for (int n : counts) {
    ScenarioConfig c = base;
    c.n_objects = n;
    c.n_frames = opts.frames;
    tile_groups(c, kBenchGroup, kBenchSpacing);
    const Scenario sc = generate_scenario(c);
    const std::vector<RecordedFrame> inputs = record_inputs(sc, filter);
    const LinearModel model = filter.model(c.meas_var);
    std::vector<GaussianBelief> sink;
    sink.reserve(static_cast<std::size_t>(n));
    // Methods are interleaved frame by frame in rotating order, so drift and
    // preemption hit all of them alike. best_ms sums each frame's fastest
    // repeat; median and mean are over whole passes.
    const std::vector<std::string>& methods = bench_methods();
    const std::size_t nm = methods.size();
    const std::size_t nf = inputs.size();
    for (const std::string& m : methods) {
      for (const RecordedFrame& frame : inputs) update_frame(m, frame, model, sink);
    }
    std::vector<double> frame_best(nm * nf, std::numeric_limits<double>::infinity());
    std::vector<std::vector<double>> pass_ms(nm, std::vector<double>(static_cast<std::size_t>(opts.repeats), 0.0));
    for (int r = 0; r < opts.repeats; ++r) {
      for (std::size_t f = 0; f < nf; ++f) {
        for (std::size_t i = 0; i < nm; ++i) {
          const std::size_t mi = (i + f + static_cast<std::size_t>(r)) % nm;
          const auto t0 = std::chrono::steady_clock::now();
          update_frame(methods[mi], inputs[f], model, sink);
          const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          frame_best[mi * nf + f] = std::min(frame_best[mi * nf + f], ms);
          pass_ms[mi][static_cast<std::size_t>(r)] += ms;
        }
      }
    }
    for (std::size_t mi = 0; mi < nm; ++mi) {
      double best = 0.0;
      for (std::size_t f = 0; f < nf; ++f) best += frame_best[mi * nf + f];
      std::vector<double> v = pass_ms[mi];
      for (double& x : v) x /= static_cast<double>(nf);
      double sum = 0.0;
      for (double x : v) sum += x;
      rows.push_back({n, methods[mi], best / static_cast<double>(nf), median_of(v), sum / static_cast<double>(v.size())});
    }
  }
  return rows;
}

}  // namespace pkf::sim
