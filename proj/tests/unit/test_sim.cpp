#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pkf/core/errors.hpp"
#include "pkf/sim/experiments.hpp"
#include "pkf/sim/io.hpp"
#include "pkf/sim/scenario.hpp"

using namespace pkf;
using namespace pkf::sim;

TEST_CASE("noiseless scenario reproduces the truth") {
  ScenarioConfig c;
  c.p_detect = 1.0;
  c.meas_var = 0.0;
  c.lambda = 0.0;
  c.n_frames = 50;
  const Scenario s = generate_scenario(c);
  for (const SimFrame& f : s.frames) {
    REQUIRE(f.detections.size() == 3);
    for (const SimDetection& d : f.detections) {
      REQUIRE(d.source >= 0);
      CHECK((d.z - f.truth[static_cast<std::size_t>(d.source)]).norm() == 0.0);
    }
  }
}

TEST_CASE("scenario generation is a pure function of the config") {
  ScenarioConfig c;
  c.seed = 42;
  c.n_frames = 100;
  CHECK(to_json(generate_scenario(c)).dump() == to_json(generate_scenario(c)).dump());
  ScenarioConfig d = c;
  d.seed = 43;
  CHECK(to_json(generate_scenario(c)).dump() != to_json(generate_scenario(d)).dump());
}

TEST_CASE("detection rate and noise variance over a long scenario") {
  ScenarioConfig c;
  c.n_objects = 1;
  c.n_frames = 10000;
  c.seed = 9;
  const Scenario s = generate_scenario(c);
  long detected = 0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  long clutter = 0;
  for (const SimFrame& f : s.frames) {
    for (const SimDetection& d : f.detections) {
      if (d.source < 0) {
        ++clutter;
        CHECK(std::abs(d.z.x() - f.truth[0].x()) <= c.clutter_halfwidth);
        continue;
      }
      ++detected;
      const Point r = d.z - f.truth[0];
      sx += r.x();
      sy += r.y();
      sxx += r.x() * r.x();
      syy += r.y() * r.y();
    }
  }
  const double n = static_cast<double>(detected);
  CHECK(std::abs(n / c.n_frames - c.p_detect) <= 0.01);
  CHECK(std::abs((sxx / n - (sx / n) * (sx / n)) / c.meas_var - 1.0) <= 0.05);
  CHECK(std::abs((syy / n - (sy / n) * (sy / n)) / c.meas_var - 1.0) <= 0.05);
  CHECK(std::abs(static_cast<double>(clutter) / c.n_frames - c.clutter_mean()) < 0.1);
}

TEST_CASE("truth velocity is the derivative of the trajectory") {
  ScenarioConfig c;
  for (int t : {0, 17, 133}) {
    const double h = 1e-4;
    // Central difference in continuous time.
    ScenarioConfig a = c;
    a.phases = {c.phase(0) + c.omega * h, c.phase(1), c.phase(2)};
    ScenarioConfig b = c;
    b.phases = {c.phase(0) - c.omega * h, c.phase(1), c.phase(2)};
    const Point fd = (truth_position(a, 0, t) - truth_position(b, 0, t)) / (2 * h);
    CHECK((fd - truth_velocity(c, 0, t)).norm() < 1e-7);
  }
}

TEST_CASE("default phases keep objects apart over a full period") {
  for (int n = 2; n <= 12; ++n) {
    ScenarioConfig c;
    c.n_objects = n;
    double closest = 1e9;
    for (int t = 0; t < 200; ++t) {
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          closest = std::min(closest, (truth_position(c, a, t) - truth_position(c, b, t)).norm());
        }
      }
    }
    INFO("n = " << n);
    CHECK(closest > 0.3);
  }
}

TEST_CASE("config validation and JSON round trip") {
  ScenarioConfig c;
  c.p_detect = 0.0;
  CHECK_THROWS_AS(c.validate(), ContractViolation);
  c = {};
  c.phases = {0.1};
  CHECK_THROWS_AS(c.validate(), ContractViolation);

  ScenarioConfig d;
  d.n_objects = 2;
  d.centers = {{1, 2}, {3, 4}};
  d.seed = 77;
  const ScenarioConfig back = scenario_config_from_json(to_json(d));
  CHECK(to_json(back) == to_json(d));
  CHECK_THROWS_AS(scenario_config_from_json(nlohmann::json{{"bogus", 1}}), ParseError);
  CHECK_THROWS_AS(scenario_config_from_json(nlohmann::json{{"p_detect", 2.0}}), ParseError);

  FilterConfig f;
  f.gate_chi2 = 5.99;
  CHECK(to_json(filter_config_from_json(to_json(f))) == to_json(f));
}

TEST_CASE("methods parse by name") {
  for (Method m : all_methods()) CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("kalman"), ContractViolation);
}

TEST_CASE("noiseless clutter-free tracking is exact for every method") {
  ScenarioConfig c;
  c.p_detect = 1.0;
  c.meas_var = 0.0;
  c.lambda = 1e-9;
  c.n_frames = 200;
  const Scenario s = generate_scenario(c);
  for (Method m : all_methods()) {
    const TrackingReport r = run_tracker(s, m);
    INFO(to_string(m));
    CHECK(r.average_error < 0.05);
    CHECK(r.failed_tracks == 0);
  }
}

TEST_CASE("reported error is the per-frame mean distance to the truth") {
  ScenarioConfig c;
  c.n_frames = 120;
  c.seed = 9;
  const Scenario s = generate_scenario(c);
  FilterConfig f;
  f.keep_estimates = true;
  const TrackingReport r = run_tracker(s, Method::pkf, f);
  REQUIRE(r.estimates.size() == s.frames.size());
  double avg = 0.0;
  for (int j = 0; j < c.n_objects; ++j) {
    double sum = 0.0;
    for (std::size_t t = 0; t < s.frames.size(); ++t) sum += (r.estimates[t][j] - s.frames[t].truth[j]).norm();
    const double e = sum / static_cast<double>(s.frames.size());
    CHECK(std::abs(e - r.object_error[j]) < 1e-12);
    CHECK(r.failed[j] == (e > f.fail_threshold));
    avg += e / c.n_objects;
  }
  CHECK(std::abs(avg - r.average_error) < 1e-12);
}

TEST_CASE("well separated objects without clutter get near one-hot weights") {
  ScenarioConfig c;
  c.n_objects = 6;
  c.p_detect = 1.0;
  c.lambda = 1e-9;
  c.n_frames = 30;
  tile_groups(c, 1, 40.0);
  const Scenario s = generate_scenario(c);
  const FilterConfig f;
  const double var = c.meas_var + f.init_pos_var;
  for (const SimFrame& fr : s.frames) {
    const int m = static_cast<int>(fr.detections.size());
    Matrix log_q(m, c.n_objects);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < c.n_objects; ++j) {
        log_q(k, j) = -0.5 * (fr.detections[k].z - fr.truth[j]).squaredNorm() / var - std::log(2 * std::numbers::pi * var);
      }
    }
    const Matrix w = association_weights(log_q, Method::pkf, c.p_detect, c.lambda);
    for (int k = 0; k < m; ++k) CHECK(w.row(k).maxCoeff() > 0.99);
  }
}

TEST_CASE("zero noise level of the crowded sweep is tracked exactly") {
  ScenarioConfig c = crowded_sweep_scenario();
  c.n_frames = 200;
  const std::vector<SweepRow> rows = noise_sweep(c, {0.0}, {Method::jpdaf, Method::pkf}, {}, 3, 1);
  REQUIRE(rows.size() == 2);
  for (const SweepRow& r : rows) {
    INFO(to_string(r.method));
    CHECK(r.mean_error < 0.05);
    CHECK(r.mean_failed == 0.0);
  }
}

TEST_CASE("tiled groups sit on a grid with in-group phases") {
  ScenarioConfig c;
  c.n_objects = 7;
  tile_groups(c, 3, 40.0);
  REQUIRE(c.centers.size() == 7);
  CHECK(c.centers[0] == Point(0, 0));
  CHECK(c.centers[3] == Point(40, 0));
  CHECK(c.centers[6] == Point(0, 40));
  CHECK(c.phases[4] == doctest::Approx(2 * std::numbers::pi / 3));
  CHECK(c.phases[6] == 0.0);
  c.validate();
  CHECK_THROWS_AS(tile_groups(c, 0, 1.0), ContractViolation);
}
