#pragma once

#include <string_view>

#include "pkf/core/box.hpp"
#include "pkf/core/types.hpp"

namespace pkf::mot {

enum class TrackStatus { tentative, confirmed, dead };

std::string_view to_string(TrackStatus s);

/// One decoupled box filter over [u, v, s, r, du, dv, ds].
struct Track {
  int id = 0;
  GaussianBelief belief;
  /// Consecutive frames with an update; reset by a miss.
  int hits = 0;
  /// Frames since creation.
  int age = 0;
  int time_since_update = 0;
  TrackStatus status = TrackStatus::tentative;
  /// Confidence of the strongest detection in the last update.
  double confidence = 0.0;

  BBox box() const;
};

}  // namespace pkf::mot
