#pragma once

#include <json.hpp>
#include <string_view>

#include "pkf/core/models.hpp"

namespace pkf::mot {

enum class AssociationMode {
  /// Ambiguity check, then permanent-based weights on the ambiguous block.
  pkf,
  /// Plain SORT: one linear assignment on IoU.
  binary,
};

std::string_view to_string(AssociationMode m);
/// Throws ContractViolation for unknown names.
AssociationMode parse_association_mode(std::string_view name);

struct TrackerConfig {
  AssociationMode mode = AssociationMode::pkf;
  /// Ratio between successive scores in a row that marks it ambiguous.
  double tau_ambig = 0.9;
  /// Ambiguous-block weights at or below this are dropped from the update.
  double tau_weight = 0.25;
  /// Likelihood exp(-alpha / IoU).
  double alpha = 2.0;
  double det_conf_threshold = 0.6;
  /// A detection whose best IoU with every track is below this starts a track.
  double new_track_iou = 0.3;
  /// Minimum IoU for a one-to-one match.
  double match_iou = 0.3;
  int max_age = 30;
  int min_hits = 3;
  /// Connected components of the ambiguous block whose smaller side exceeds
  /// this fall back to linear assignment.
  int max_block = 12;
  BoxInitConfig init;

  void validate() const;
};

/// Denser scenes: tau_ambig 0.95 and detection threshold 0.4.
TrackerConfig crowded_tracker_config();

nlohmann::json to_json(const TrackerConfig& c);
/// Keys override `base`. Unknown keys and invalid values throw ParseError.
TrackerConfig tracker_config_from_json(const nlohmann::json& j, TrackerConfig base = {});

}  // namespace pkf::mot
