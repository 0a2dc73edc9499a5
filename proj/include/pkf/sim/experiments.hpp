#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pkf/sim/runner.hpp"

namespace pkf::sim {

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 means
/// hardware concurrency). Results must be written by index for determinism.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

struct MethodSummary {
  Method method = Method::pkf;
  /// Per-object error averaged over seeds.
  std::vector<double> object_error;
  /// Mean over seeds of the per-run average error, and its standard deviation.
  double average_error = 0.0;
  double std_error = 0.0;
  double mean_failed = 0.0;
  int diverged = 0;
  double median_update_ms = 0.0;
  CovarianceHealth health;
};

struct BatchResult {
  ScenarioConfig base;
  std::vector<std::uint64_t> seeds;
  std::vector<MethodSummary> methods;
  /// runs[method][seed]
  std::vector<std::vector<TrackingReport>> runs;

  const MethodSummary& summary(Method m) const;
};

/// Every method on the scenarios base.seed, base.seed + 1, ... (n_seeds of them).
BatchResult run_batch(const ScenarioConfig& base, const std::vector<Method>& methods,
                      const FilterConfig& filter, int n_seeds, int threads = 0);

struct SweepRow {
  double noise = 0.0;
  Method method = Method::pkf;
  double mean_error = 0.0;
  double std_error = 0.0;
  double mean_failed = 0.0;
  CovarianceHealth health;
};

/// Ten objects with p_detect 0.95. The figure-eight is widened to amplitude
/// 10 so neighbours on the shared curve sit about 5 m apart instead of 3.
ScenarioConfig crowded_sweep_scenario();

/// Measurement-noise variance levels 0.2, 0.25, ..., 0.75.
std::vector<double> default_noise_levels();

/// For each level the scenario and filter noise variance are set to the
/// level and every method runs on the same seeds.
std::vector<SweepRow> noise_sweep(const ScenarioConfig& base, const std::vector<double>& levels,
                                  const std::vector<Method>& methods, const FilterConfig& filter,
                                  int n_seeds, int threads = 0);

/// Update-only benchmark methods; kf takes the single heaviest measurement.
const std::vector<std::string>& bench_methods();
std::vector<int> default_bench_counts();

struct BenchRow {
  int n_objects = 0;
  std::string method;
  /// Per-frame update time. best_ms averages each frame's fastest repeat;
  /// median and mean are over whole passes.
  double best_ms = 0.0;
  double median_ms = 0.0;
  double mean_ms = 0.0;
};

struct BenchOptions {
  int frames = 200;
  /// Timed passes over all frames per method; each frame keeps its fastest.
  int repeats = 15;
};

/// Splits the objects into groups of `group`, each on its own figure-eight,
/// with group centres on a square grid `spacing` apart.
void tile_groups(ScenarioConfig& c, int group, double spacing);

/// Bench scenes are tiled 3-object groups, far enough apart that neither
/// clutter boxes nor gates overlap between groups.
inline constexpr int kBenchGroup = 3;
inline constexpr double kBenchSpacing = 40.0;

/// Records priors, measurements and weights along a PKF run, then times only
/// the update step of each method on identical inputs.
std::vector<BenchRow> bench_update(const ScenarioConfig& base, const std::vector<int>& counts,
                                   const FilterConfig& filter, const BenchOptions& opts = {});

}  // namespace pkf::sim
