#include "pkf/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pkf/core/errors.hpp"

namespace pkf::sim {

void ScenarioConfig::validate() const {
  if (n_objects < 1) throw ContractViolation("n_objects must be at least 1");
  if (n_frames < 1) throw ContractViolation("n_frames must be at least 1");
  if (!(p_detect > 0 && p_detect <= 1)) throw ContractViolation("p_detect must be in (0, 1]");
  if (!(meas_var >= 0)) throw ContractViolation("meas_var must be nonnegative");
  if (!(clutter_halfwidth > 0)) throw ContractViolation("clutter_halfwidth must be positive");
  if (!(lambda >= 0)) throw ContractViolation("lambda must be nonnegative");
  if (!(clutter_area_factor >= 0)) throw ContractViolation("clutter_area_factor must be nonnegative");
  if (!phases.empty() && static_cast<int>(phases.size()) != n_objects) {
    throw ContractViolation("phases must be empty or have one entry per object");
  }
  if (!centers.empty() && static_cast<int>(centers.size()) != n_objects) {
    throw ContractViolation("centers must be empty or have one entry per object");
  }
}

double ScenarioConfig::phase(int object) const {
  if (!phases.empty()) return phases[static_cast<std::size_t>(object)];
  // Phases half a turn apart reach the crossing together and coincide there,
  // so for even n space over n + 1 slots instead.
  const int slots = n_objects % 2 == 0 ? n_objects + 1 : n_objects;
  return 2.0 * std::numbers::pi * object / slots;
}

Point ScenarioConfig::center(int object) const {
  if (!centers.empty()) return centers[static_cast<std::size_t>(object)];
  return Point::Zero();
}

Point truth_position(const ScenarioConfig& c, int object, int frame) {
  const double a = c.omega * frame + c.phase(object);
  return c.center(object) + Point(c.amplitude * std::sin(a), c.amplitude * std::sin(a) * std::cos(a));
}

Point truth_velocity(const ScenarioConfig& c, int object, int frame) {
  const double a = c.omega * frame + c.phase(object);
  return Point(c.amplitude * c.omega * std::cos(a), c.amplitude * c.omega * std::cos(2.0 * a));
}

Scenario generate_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario out;
  out.config = config;
  out.frames.resize(static_cast<std::size_t>(config.n_frames));

  std::mt19937_64 rng(config.seed);
  std::bernoulli_distribution detect(config.p_detect);
  std::normal_distribution<double> noise(0.0, std::sqrt(std::max(config.meas_var, 1e-300)));
  std::uniform_real_distribution<double> box(-config.clutter_halfwidth, config.clutter_halfwidth);
  const double clutter_mean = config.clutter_mean();

  for (int t = 0; t < config.n_frames; ++t) {
    SimFrame& f = out.frames[static_cast<std::size_t>(t)];
    f.truth.reserve(static_cast<std::size_t>(config.n_objects));
    for (int j = 0; j < config.n_objects; ++j) f.truth.push_back(truth_position(config, j, t));
    for (int j = 0; j < config.n_objects; ++j) {
      const Point& x = f.truth[static_cast<std::size_t>(j)];
      if (detect(rng)) {
        Point z = x;
        if (config.meas_var > 0) {
          const double dx = noise(rng);
          const double dy = noise(rng);
          z += Point(dx, dy);
        }
        f.detections.push_back({z, j});
      }
      if (clutter_mean > 0) {
        const int count = std::poisson_distribution<int>(clutter_mean)(rng);
        for (int c = 0; c < count; ++c) {
          const double ux = box(rng);
          const double uy = box(rng);
          f.detections.push_back({x + Point(ux, uy), -1});
        }
      }
    }
    std::shuffle(f.detections.begin(), f.detections.end(), rng);
  }
  return out;
}

}  // namespace pkf::sim
