#include "pkf/sim/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <set>

#include "pkf/core/errors.hpp"

namespace pkf::sim {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParseError(std::string("unknown ") + what + " key '" + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  return os;
}

json health_json(const CovarianceHealth& h) {
  return {{"checked", h.checked},
          {"asymmetric", h.asymmetric},
          {"not_psd", h.not_psd},
          {"non_finite", h.non_finite}};
}

}  // namespace

json to_json(const ScenarioConfig& c) {
  json centers = json::array();
  for (const Point& p : c.centers) centers.push_back({p.x(), p.y()});
  return {{"n_objects", c.n_objects},
          {"n_frames", c.n_frames},
          {"p_detect", c.p_detect},
          {"meas_var", c.meas_var},
          {"clutter_halfwidth", c.clutter_halfwidth},
          {"lambda", c.lambda},
          {"clutter_area_factor", c.clutter_area_factor},
          {"seed", c.seed},
          {"amplitude", c.amplitude},
          {"omega", c.omega},
          {"phases", c.phases},
          {"centers", centers}};
}

ScenarioConfig scenario_config_from_json(const json& j, ScenarioConfig c) {
  reject_unknown(j,
                 {"n_objects", "n_frames", "p_detect", "meas_var", "clutter_halfwidth", "lambda",
                  "clutter_area_factor", "seed", "amplitude", "omega", "phases", "centers"},
                 "scenario");
  read(j, "n_objects", c.n_objects);
  read(j, "n_frames", c.n_frames);
  read(j, "p_detect", c.p_detect);
  read(j, "meas_var", c.meas_var);
  read(j, "clutter_halfwidth", c.clutter_halfwidth);
  read(j, "lambda", c.lambda);
  read(j, "clutter_area_factor", c.clutter_area_factor);
  read(j, "seed", c.seed);
  read(j, "amplitude", c.amplitude);
  read(j, "omega", c.omega);
  read(j, "phases", c.phases);
  if (j.contains("centers")) {
    std::vector<std::vector<double>> raw;
    read(j, "centers", raw);
    c.centers.clear();
    for (const auto& p : raw) {
      if (p.size() != 2) throw ParseError("centers entries must be [x, y]");
      c.centers.emplace_back(p[0], p[1]);
    }
  }
  try {
    c.validate();
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  }
  return c;
}

json to_json(const FilterConfig& c) {
  return {{"pos_process_var", c.pos_process_var},
          {"vel_process_var", c.vel_process_var},
          {"init_pos_var", c.init_pos_var},
          {"init_vel_var", c.init_vel_var},
          {"min_meas_var", c.min_meas_var},
          {"gate_chi2", c.gate_chi2},
          {"gate_binary", c.gate_binary},
          {"gate_pmht", c.gate_pmht},
          {"gate_jpdaf", c.gate_jpdaf},
          {"gate_pkf", c.gate_pkf},
          {"pkf_min_weight", c.pkf_min_weight},
          {"coupled", c.coupled},
          {"check_health", c.check_health},
          {"fail_threshold", c.fail_threshold}};
}

FilterConfig filter_config_from_json(const json& j, FilterConfig c) {
  reject_unknown(j,
                 {"pos_process_var", "vel_process_var", "init_pos_var", "init_vel_var", "min_meas_var", "gate_chi2",
                  "gate_binary", "gate_pmht", "gate_jpdaf", "gate_pkf", "pkf_min_weight", "coupled",
                  "check_health", "fail_threshold"},
                 "filter");
  read(j, "pos_process_var", c.pos_process_var);
  read(j, "vel_process_var", c.vel_process_var);
  read(j, "init_pos_var", c.init_pos_var);
  read(j, "init_vel_var", c.init_vel_var);
  read(j, "min_meas_var", c.min_meas_var);
  read(j, "gate_chi2", c.gate_chi2);
  read(j, "gate_binary", c.gate_binary);
  read(j, "gate_pmht", c.gate_pmht);
  read(j, "gate_jpdaf", c.gate_jpdaf);
  read(j, "gate_pkf", c.gate_pkf);
  read(j, "pkf_min_weight", c.pkf_min_weight);
  read(j, "coupled", c.coupled);
  read(j, "check_health", c.check_health);
  read(j, "fail_threshold", c.fail_threshold);
  try {
    c.validate();
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  }
  return c;
}

json to_json(const Scenario& s) {
  json frames = json::array();
  for (const SimFrame& f : s.frames) {
    json truth = json::array();
    for (const Point& p : f.truth) truth.push_back({p.x(), p.y()});
    json dets = json::array();
    for (const SimDetection& d : f.detections) dets.push_back({d.z.x(), d.z.y(), d.source});
    frames.push_back({{"truth", truth}, {"detections", dets}});
  }
  return {{"config", to_json(s.config)}, {"frames", frames}};
}

json to_json(const TrackingReport& r) {
  std::vector<int> failed;
  for (bool f : r.failed) failed.push_back(f ? 1 : 0);
  return {{"method", std::string(to_string(r.method))},
          {"object_error", r.object_error},
          {"average_error", r.average_error},
          {"failed", failed},
          {"failed_tracks", r.failed_tracks},
          {"diverged_tracks", r.diverged_tracks},
          {"mean_update_ms", r.mean_update_ms},
          {"median_update_ms", r.median_update_ms},
          {"covariance_health", health_json(r.health)}};
}

json to_json(const BatchResult& b) {
  json methods = json::array();
  for (const MethodSummary& s : b.methods) {
    methods.push_back({{"method", std::string(to_string(s.method))},
                       {"object_error", s.object_error},
                       {"average_error", s.average_error},
                       {"std_error", s.std_error},
                       {"mean_failed", s.mean_failed},
                       {"diverged", s.diverged},
                       {"median_update_ms", s.median_update_ms},
                       {"covariance_health", health_json(s.health)}});
  }
  return {{"scenario", to_json(b.base)}, {"seeds", b.seeds}, {"methods", methods}};
}

void write_table1_csv(const std::filesystem::path& path, const BatchResult& b) {
  std::ofstream os = open_out(path);
  os << "method";
  for (int j = 0; j < b.base.n_objects; ++j) os << ",obj_" << j + 1;
  os << ",avg,std,failed\n";
  for (const MethodSummary& s : b.methods) {
    os << to_string(s.method);
    for (double e : s.object_error) os << fmt::format(",{:.4f}", e);
    os << fmt::format(",{:.4f},{:.4f},{:.2f}\n", s.average_error, s.std_error, s.mean_failed);
  }
}

void write_fig4_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream os = open_out(path);
  os << "noise,method,error,std,failed\n";
  for (const SweepRow& r : rows) {
    os << fmt::format("{:.2f},{},{:.4f},{:.4f},{:.2f}\n", r.noise, to_string(r.method), r.mean_error,
                      r.std_error, r.mean_failed);
  }
}

void write_table2_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows) {
  std::ofstream os = open_out(path);
  os << "objects,method,best_ms,median_ms,mean_ms\n";
  for (const BenchRow& r : rows) {
    os << fmt::format("{},{},{:.5f},{:.5f},{:.5f}\n", r.n_objects, r.method, r.best_ms, r.median_ms, r.mean_ms);
  }
}

}  // namespace pkf::sim
