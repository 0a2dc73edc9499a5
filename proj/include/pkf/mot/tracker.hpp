#pragma once

#include <span>
#include <vector>

#include "pkf/core/linalg.hpp"
#include "pkf/mot/config.hpp"
#include "pkf/mot/track.hpp"

namespace pkf::mot {

/// Per-frame association statistics.
struct StepStats {
  int clear_matches = 0;
  int ambiguous_measurements = 0;
  int ambiguous_tracks = 0;
  /// Ambiguous components solved by linear assignment because of their size.
  int fallback_blocks = 0;
  int created = 0;
  int removed = 0;
};

/// One emitted box.
struct TrackOutput {
  int id = 0;
  BBox box;
  double confidence = 0.0;
};

/// SORT-style tracker with probabilistic association on ambiguous blocks.
class Tracker {
public:
  explicit Tracker(TrackerConfig config = {});

  /// Processes one frame: predict, score, associate, update, create, retire.
  /// Detections below det_conf_threshold or with a non-positive size are
  /// ignored. Returns confirmed tracks updated in this frame, sorted by id.
  std::vector<TrackOutput> step(std::span<const Detection> detections);

  /// Live tracks (tentative and confirmed), in creation order.
  const std::vector<Track>& tracks() const { return tracks_; }
  const StepStats& last_stats() const { return stats_; }
  const CovarianceHealth& health() const { return health_; }
  const TrackerConfig& config() const { return config_; }
  int frames_processed() const { return frame_; }

private:
  void update_track(Track& t, const GaussianBelief& post, double confidence);

  TrackerConfig config_;
  LinearModel model_;
  std::vector<Track> tracks_;
  int next_id_ = 1;
  int frame_ = 0;
  StepStats stats_;
  CovarianceHealth health_;
};

}  // namespace pkf::mot
