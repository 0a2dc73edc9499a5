#include "pkf/mot/config.hpp"

#include <set>
#include <string>

#include "pkf/assoc/permanent.hpp"
#include "pkf/core/errors.hpp"

namespace pkf::mot {

using nlohmann::json;

std::string_view to_string(AssociationMode m) { return m == AssociationMode::pkf ? "pkf" : "binary"; }

AssociationMode parse_association_mode(std::string_view name) {
  if (name == "pkf") return AssociationMode::pkf;
  if (name == "binary") return AssociationMode::binary;
  throw ContractViolation("unknown association mode '" + std::string(name) + "'");
}

void TrackerConfig::validate() const {
  auto unit = [](double v, const char* what) {
    if (!(v >= 0 && v <= 1)) throw ContractViolation(std::string(what) + " must be in [0, 1]");
  };
  if (!(tau_ambig > 0)) throw ContractViolation("tau_ambig must be positive");
  unit(tau_weight, "tau_weight");
  unit(det_conf_threshold, "det_conf_threshold");
  unit(new_track_iou, "new_track_iou");
  unit(match_iou, "match_iou");
  if (!(alpha > 0)) throw ContractViolation("alpha must be positive");
  if (max_age < 0 || min_hits < 0) throw ContractViolation("max_age and min_hits must be nonnegative");
  if (max_block < 1 || max_block > kDefaultPermanentCap) {
    throw ContractViolation("max_block must be in [1, " + std::to_string(kDefaultPermanentCap) + "]");
  }
  if (!(init.position_var > 0 && init.velocity_var > 0)) {
    throw ContractViolation("initial variances must be positive");
  }
}

TrackerConfig crowded_tracker_config() {
  TrackerConfig c;
  c.tau_ambig = 0.95;
  c.det_conf_threshold = 0.4;
  return c;
}

json to_json(const TrackerConfig& c) {
  return {{"mode", std::string(to_string(c.mode))},
          {"tau_ambig", c.tau_ambig},
          {"tau_weight", c.tau_weight},
          {"alpha", c.alpha},
          {"det_conf_threshold", c.det_conf_threshold},
          {"new_track_iou", c.new_track_iou},
          {"match_iou", c.match_iou},
          {"max_age", c.max_age},
          {"min_hits", c.min_hits},
          {"max_block", c.max_block},
          {"init_position_var", c.init.position_var},
          {"init_velocity_var", c.init.velocity_var}};
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

TrackerConfig tracker_config_from_json(const json& j, TrackerConfig c) {
  static const std::set<std::string> known{"mode",        "tau_ambig", "tau_weight", "alpha",
                                           "det_conf_threshold", "new_track_iou", "match_iou",
                                           "max_age",     "min_hits",  "max_block",  "init_position_var",
                                           "init_velocity_var"};
  if (!j.is_object()) throw ParseError("tracker config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParseError("unknown tracker key '" + key + "'");
  }
  std::string mode(to_string(c.mode));
  read(j, "mode", mode);
  read(j, "tau_ambig", c.tau_ambig);
  read(j, "tau_weight", c.tau_weight);
  read(j, "alpha", c.alpha);
  read(j, "det_conf_threshold", c.det_conf_threshold);
  read(j, "new_track_iou", c.new_track_iou);
  read(j, "match_iou", c.match_iou);
  read(j, "max_age", c.max_age);
  read(j, "min_hits", c.min_hits);
  read(j, "max_block", c.max_block);
  read(j, "init_position_var", c.init.position_var);
  read(j, "init_velocity_var", c.init.velocity_var);
  try {
    c.mode = parse_association_mode(mode);
    c.validate();
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  }
  return c;
}

}  // namespace pkf::mot
