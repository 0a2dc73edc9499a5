// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pkf/assoc/permanent.hpp"
#include "pkf/assoc/weights.hpp"
#include "pkf/filter/kalman.hpp"
#include "pkf/mot/config.hpp"
#include "pkf/mot/fixtures.hpp"
#include "pkf/mot/metrics.hpp"
#include "pkf/mot/mot_io.hpp"
#include "pkf/sim/experiments.hpp"
#include "pkf/sim/io.hpp"
#include "pkf/testing/oracles.hpp"

using namespace pkf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Health from every simulation and tracking run below, for the last criterion.
CovarianceHealth g_health;
int g_diverged = 0;

Outcome permanent_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> size(1, 7);
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    int m = size(rng), n = size(rng);
    if (m > n) std::swap(m, n);
    const Matrix a = testing::random_nonnegative(rng, m, n);
    const double want = testing::brute_force_permanent(a);
    const double err = std::abs(permanent(a) - want) / std::max(std::abs(want), 1e-300);
    worst = std::max(worst, err);
    bad += !(err <= 1e-10);
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 10.0, fmt("500 cases, %d over 1e-10, max rel err %.2e, %.2f s (limit 10 s)", bad, worst, t)};
}

Outcome pkf_weight_oracle() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> size(1, 5);
  std::uniform_real_distribution<double> log_c(-6.0, 6.0);
  double worst = 0.0, worst_scale = 0.0;
  int cases = 0, tries = 0;
  while (cases < 200 && tries < 10000) {
    ++tries;
    int m = size(rng), n = size(rng);
    if (m > n) std::swap(m, n);
    const Matrix q = testing::random_nonnegative(rng, m, n, 0.15);
    const Matrix want = testing::brute_force_pkf_weights(q);
    bool feasible = true;
    for (Eigen::Index k = 0; k < want.rows(); ++k) feasible &= want.row(k).sum() > 0;
    if (!feasible) continue;
    ++cases;
    const Matrix got = pkf_weights(LikelihoodMatrix(q)).w;
    worst = std::max(worst, testing::relative_error(got, want));
    const Matrix scaled = pkf_weights(LikelihoodMatrix(q * std::exp(log_c(rng)))).w;
    worst_scale = std::max(worst_scale, (scaled - got).cwiseAbs().maxCoeff());
  }
  return {cases == 200 && worst <= 1e-10 && worst_scale <= 1e-12,
          fmt("%d feasible cases, max err %.2e (limit 1e-10), scale change %.2e (limit 1e-12)", cases, worst,
              worst_scale)};
}

Outcome update_equivalence() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> dim(1, 7), count(1, 4);
  std::uniform_real_distribution<double> weight(0.25, 1.0);
  std::normal_distribution<double> g(0.0, 2.0);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = dim(rng);
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    const LinearModel model = testing::random_model(rng, n, m);
    const GaussianBelief prior = testing::random_belief(rng, n);
    std::vector<WeightedMeasurement> meas;
    const int c = count(rng);
    for (int k = 0; k < c; ++k) {
      Vector z = model.H * prior.mean;
      for (int i = 0; i < m; ++i) z[i] += g(rng);
      meas.push_back({z, weight(rng)});
    }
    const GaussianBelief got = pkf_update(prior, meas, model);
    const GaussianBelief want = testing::info_form_update(prior, meas, model);
    worst = std::max({worst, testing::relative_error(got.mean, want.mean), testing::relative_error(got.cov, want.cov)});
  }
  double worst_kf = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const int n = dim(rng);
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    const LinearModel model = testing::random_model(rng, n, m);
    const GaussianBelief prior = testing::random_belief(rng, n);
    Vector z = model.H * prior.mean;
    for (int i = 0; i < m; ++i) z[i] += g(rng);
    const std::vector<WeightedMeasurement> one{{z, 1.0}};
    const GaussianBelief got = pkf_update(prior, one, model);
    const GaussianBelief want = kf_update(prior, z, model);
    worst_kf = std::max({worst_kf, testing::relative_error(got.mean, want.mean),
                         testing::relative_error(got.cov, want.cov)});
  }
  return {worst <= 1e-8 && worst_kf <= 1e-12,
          fmt("1000 cases max rel err %.2e (limit 1e-8); single unit-weight vs Kalman %.2e (limit 1e-12)", worst,
              worst_kf)};
}

Outcome jpdaf_weight_oracle() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> pd(0.3, 0.99), log_lambda(-5.0, 1.0);
  double worst = 0.0, worst_limit = 0.0;
  int cases = 0;
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      for (int rep = 0; rep < 10; ++rep) {
        const Matrix q = testing::random_nonnegative(rng, m, n, 0.2);
        const double p = pd(rng);
        const double lambda = std::exp(log_lambda(rng));
        const testing::EventWeights want = testing::enumerate_jpdaf_weights(q, p, lambda);
        const WeightMatrix got = jpdaf_weights(LikelihoodMatrix(q), p, lambda);
        worst = std::max(worst, testing::relative_error(got.w, want.w));
        worst = std::max(worst, got.clutter ? testing::relative_error(*got.clutter, want.clutter) : 1.0);
        ++cases;
      }
    }
  }
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix q = testing::random_nonnegative(rng, n, n);
      const double lambda = std::exp(log_lambda(rng));
      const Matrix a = jpdaf_weights(LikelihoodMatrix(q), 1.0, lambda).w;
      const Matrix b = pkf_weights(LikelihoodMatrix(q)).w;
      worst_limit = std::max(worst_limit, testing::relative_error(a, b));
    }
  }
  return {worst <= 1e-10 && worst_limit <= 1e-10,
          fmt("%d cases with clutter, max err %.2e; full-detection square limit vs pkf weights %.2e (limit 1e-10)",
              cases, worst, worst_limit)};
}

void absorb(const sim::BatchResult& b) {
  for (const sim::MethodSummary& s : b.methods) {
    g_health += s.health;
    g_diverged += s.diverged;
  }
}

Outcome simulation_table() {
  const auto t0 = Clock::now();
  sim::ScenarioConfig three;
  three.n_objects = 3;
  const sim::BatchResult a = sim::run_batch(three, sim::all_methods(), {}, 20);
  sim::ScenarioConfig five = three;
  five.n_objects = 5;
  const sim::BatchResult b = sim::run_batch(five, {sim::Method::binary}, {}, 20);
  const double t = seconds_since(t0);
  absorb(a);
  absorb(b);
  const double pkf = a.summary(sim::Method::pkf).average_error;
  const double jpdaf = a.summary(sim::Method::jpdaf).average_error;
  const double pmht = a.summary(sim::Method::pmht).average_error;
  const double binary = a.summary(sim::Method::binary).average_error;
  const double binary5 = b.summary(sim::Method::binary).average_error;
  const bool range = pkf >= 0.4 && pkf <= 0.9;
  const bool order = pkf <= jpdaf && jpdaf < pmht && pmht < binary;
  return {range && order && binary5 > 5.0 && t < 120.0,
          fmt("3 objects, 20 seeds: pkf %.3f jpdaf %.3f pmht %.3f binary %.3f (pkf in [0.4, 0.9]: %s, order: %s); "
              "5-object binary %.2f (> 5); %.1f s (limit 120 s)",
              pkf, jpdaf, pmht, binary, range ? "yes" : "no", order ? "yes" : "no", binary5, t)};
}

Outcome bench_order() {
  const std::vector<int> counts = sim::default_bench_counts();
  const std::vector<sim::BenchRow> rows = sim::bench_update({}, counts, {});
  auto best = [&](int n, const std::string& m) {
    for (const sim::BenchRow& r : rows) {
      if (r.n_objects == n && r.method == m) return r.best_ms;
    }
    return std::nan("");
  };
  bool ok = true;
  std::string detail;
  for (int n : counts) {
    const double kf = best(n, "kf"), pmht = best(n, "pmht"), jpdaf = best(n, "jpdaf"), pkf = best(n, "pkf");
    // "Roughly no slower than" read as within 25 percent.
    const bool level = kf < pmht && pmht < jpdaf && jpdaf <= 1.25 * pkf;
    ok = ok && level;
    detail += fmt("%d: kf %.4f pmht %.4f jpdaf %.4f pkf %.4f ms%s; ", n, kf, pmht, jpdaf, pkf, level ? "" : " (out of order)");
  }
  const double pkf20 = best(20, "pkf");
  ok = ok && pkf20 < 5.0;
  detail += fmt("pkf at 20 objects %.4f ms (limit 5 ms)", pkf20);
  return {ok, detail};
}

Outcome noise_trend() {
  const std::vector<double> levels = sim::default_noise_levels();
  const std::vector<sim::SweepRow> rows =
      sim::noise_sweep(sim::crowded_sweep_scenario(), levels, {sim::Method::jpdaf, sim::Method::pkf}, {}, 10);
  int wins = 0;
  double worst_failed_gap = 0.0;
  std::string detail;
  for (double level : levels) {
    const sim::SweepRow* j = nullptr;
    const sim::SweepRow* p = nullptr;
    for (const sim::SweepRow& r : rows) {
      if (std::abs(r.noise - level) > 1e-12) continue;
      (r.method == sim::Method::jpdaf ? j : p) = &r;
    }
    wins += p->mean_error <= j->mean_error;
    worst_failed_gap = std::max(worst_failed_gap, std::abs(p->mean_failed - j->mean_failed));
    detail += fmt("%.2f: pkf %.3f/%.1f jpdaf %.3f/%.1f; ", level, p->mean_error, p->mean_failed, j->mean_error,
                  j->mean_failed);
  }
  for (const sim::SweepRow& r : rows) {
    g_health += r.health;
  }
  const bool majority = 2 * wins > static_cast<int>(levels.size());
  const bool failed_close = worst_failed_gap <= 2.0;
  return {majority && failed_close,
          fmt("pkf error <= jpdaf at %d of %zu levels (need a strict majority); max failed-track gap %.2f (limit 2). "
              "error/failed per level: ",
              wins, levels.size(), worst_failed_gap) +
              detail};
}

std::string results_text(const mot::TrackResults& r) {
  std::ostringstream os;
  mot::write_mot_results(r, os);
  return os.str();
}

std::string file_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome mot_properties() {
  const mot::Sequence ped = mot::pedestrian_sequence();
  std::vector<std::string> notes;

  // (a) Determinism: repeated tracker runs, and simulation tables across worker counts.
  const mot::SequenceResult r1 = mot::track_sequence(ped.detections, {});
  const mot::SequenceResult r2 = mot::track_sequence(ped.detections, {});
  g_health += r1.health;
  g_health += r2.health;
  const fs::path tmp = fs::temp_directory_path() / "pkf_acceptance";
  fs::create_directories(tmp);
  sim::ScenarioConfig sc;
  sc.n_frames = 200;
  const sim::BatchResult b1 = sim::run_batch(sc, sim::all_methods(), {}, 4, 1);
  const sim::BatchResult b4 = sim::run_batch(sc, sim::all_methods(), {}, 4, 4);
  absorb(b1);
  absorb(b4);
  sim::write_table1_csv(tmp / "t1.csv", b1);
  sim::write_table1_csv(tmp / "t4.csv", b4);
  mot::write_mot_results(r1.results, tmp / "r1.txt");
  mot::write_mot_results(r2.results, tmp / "r2.txt");
  const bool a = file_text(tmp / "r1.txt") == file_text(tmp / "r2.txt") && !file_text(tmp / "r1.txt").empty() &&
                 file_text(tmp / "t1.csv") == file_text(tmp / "t4.csv");
  notes.push_back(fmt("(a) determinism %s", a ? "ok" : "FAILED"));

  // (b) Ambiguity threshold at or near 1 against the binary baseline.
  mot::TrackerConfig binary;
  binary.mode = mot::AssociationMode::binary;
  mot::TrackerConfig near_one;
  near_one.tau_ambig = 1.0 - 1e-9;
  mot::TrackerConfig one;
  one.tau_ambig = 1.0;
  const std::string base = results_text(mot::track_sequence(ped.detections, binary).results);
  const bool b = base == results_text(mot::track_sequence(ped.detections, near_one).results) &&
                 base == results_text(mot::track_sequence(ped.detections, one).results);
  notes.push_back(fmt("(b) threshold-1 equals binary %s", b ? "ok" : "FAILED"));

  // (c) Crossing fixture.
  const fs::path data(PKF_TEST_DATA_DIR);
  const mot::FrameDetections cross = mot::parse_mot_detections(data / "crossing_det.txt");
  const std::vector<mot::MotRecord> gt = mot::parse_mot_file(data / "crossing_gt.txt");
  const mot::SequenceResult cp = mot::track_sequence(cross, {});
  const mot::SequenceResult cb = mot::track_sequence(cross, binary);
  g_health += cp.health;
  g_health += cb.health;
  const int sw_p = mot::id_switch_count(mot::to_records(cp.results), gt);
  const int sw_b = mot::id_switch_count(mot::to_records(cb.results), gt);
  const bool c = sw_p == 0 && sw_b >= 1;
  notes.push_back(fmt("(c) crossing id switches pkf %d binary %d", sw_p, sw_b));

  // (d) Round trip through the text format.
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0.0, 2000.0);
  std::vector<mot::MotRecord> recs;
  for (int i = 0; i < 2000; ++i) {
    recs.push_back({1 + i / 10, i % 10 == 0 ? -1 : i % 37, {u(rng) - 100, u(rng) - 100, 1 + u(rng), 1 + u(rng)},
                    u(rng) / 2000});
  }
  std::ostringstream os;
  mot::write_mot_records(recs, os);
  std::istringstream is(os.str());
  const std::vector<mot::MotRecord> back = mot::parse_mot(is);
  bool d = back.size() == recs.size();
  for (std::size_t i = 0; d && i < recs.size(); ++i) {
    const mot::MotRecord& x = recs[i];
    const mot::MotRecord& y = back[i];
    const double tol = 0.005 + 1e-9;
    d = x.frame == y.frame && x.id == y.id && std::abs(x.box.left - y.box.left) <= tol &&
        std::abs(x.box.top - y.box.top) <= tol && std::abs(x.box.width - y.box.width) <= tol &&
        std::abs(x.box.height - y.box.height) <= tol && std::abs(x.confidence - y.confidence) <= tol;
  }
  std::ostringstream again;
  mot::write_mot_records(back, again);
  d = d && again.str() == os.str();
  notes.push_back(fmt("(d) round trip of %zu records %s", recs.size(), d ? "ok" : "FAILED"));

  fs::remove_all(tmp);
  std::string detail;
  for (const std::string& s : notes) detail += s + "; ";
  return {a && b && c && d, detail};
}

Outcome throughput() {
  const mot::Sequence ped = mot::pedestrian_sequence();
  const mot::SequenceResult r = mot::track_sequence(ped.detections, {});
  g_health += r.health;
  std::size_t dets = 0;
  for (const auto& [f, d] : ped.detections) dets += d.size();
  const double fps = r.frames / r.seconds;
  return {r.frames >= 1000 && fps >= 250.0,
          fmt("%d frames, %.1f detections/frame, %.0f frames/s single thread (limit 250)", r.frames,
              static_cast<double>(dets) / r.frames, fps)};
}

Outcome covariance_health() {
  return {g_health.ok() && g_health.checked > 0,
          fmt("%ld posteriors checked: %ld asymmetric, %ld not PSD, %ld non-finite; %d diverged simulation tracks",
              g_health.checked, g_health.asymmetric, g_health.not_psd, g_health.non_finite, g_diverged)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"permanent vs injection enumeration", permanent_oracle},
      {"pkf weights vs association enumeration", pkf_weight_oracle},
      {"pkf update vs information form", update_equivalence},
      {"jpdaf weights vs event enumeration", jpdaf_weight_oracle},
      {"simulation error range and ordering", simulation_table},
      {"update time ordering", bench_order},
      {"noise sweep trend", noise_trend},
      {"mot pipeline properties", mot_properties},
      {"tracker throughput", throughput},
      {"covariance health", covariance_health},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
