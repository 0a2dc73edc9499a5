#include "pkf/mot/tracker.hpp"

#include <algorithm>

#include "pkf/assoc/ambiguity.hpp"
#include "pkf/assoc/assignment.hpp"
#include "pkf/assoc/components.hpp"
#include "pkf/assoc/iou.hpp"
#include "pkf/assoc/likelihood.hpp"
#include "pkf/assoc/weights.hpp"
#include "pkf/core/errors.hpp"
#include "pkf/core/log.hpp"
#include "pkf/filter/kalman.hpp"

namespace pkf::mot {

std::string_view to_string(TrackStatus s) {
  switch (s) {
    case TrackStatus::tentative: return "tentative";
    case TrackStatus::confirmed: return "confirmed";
    case TrackStatus::dead: return "dead";
  }
  return "?";
}

BBox Track::box() const { return z_to_bbox(belief.mean); }

Tracker::Tracker(TrackerConfig config) : config_(std::move(config)), model_(sort_motion_model()) {
  config_.validate();
}

void Tracker::update_track(Track& t, const GaussianBelief& post, double confidence) {
  GaussianBelief b = post;
  clamp_box_state(b.mean);
  health_.record(b);
  if (!all_finite(b)) {
    log::get().warn("track {} went non-finite; dropping it", t.id);
    t.status = TrackStatus::dead;
    return;
  }
  t.belief = std::move(b);
  t.time_since_update = 0;
  ++t.hits;
  t.confidence = confidence;
}

std::vector<TrackOutput> Tracker::step(std::span<const Detection> detections) {
  ++frame_;
  stats_ = {};

  std::vector<Detection> dets;
  dets.reserve(detections.size());
  for (const Detection& d : detections) {
    if (d.confidence < config_.det_conf_threshold) continue;
    if (!(d.box.width > 0 && d.box.height > 0)) {
      log::get().debug("frame {}: skipping detection with non-positive size", frame_);
      continue;
    }
    dets.push_back(d);
  }

  // Predict. A track whose box cannot be formed any more is retired here.
  std::vector<BBox> predicted;
  predicted.reserve(tracks_.size());
  for (Track& t : tracks_) {
    clamp_area_velocity(t.belief.mean);
    t.belief = predict(t.belief, model_);
    ++t.age;
    if (t.time_since_update > 0) t.hits = 0;
    ++t.time_since_update;
    try {
      predicted.push_back(t.box());
    } catch (const DegenerateState&) {
      t.status = TrackStatus::dead;
      predicted.push_back(BBox{0, 0, 0, 0});
    }
  }

  const int m = static_cast<int>(dets.size());
  const int n = static_cast<int>(tracks_.size());
  std::vector<BBox> det_boxes;
  det_boxes.reserve(dets.size());
  for (const Detection& d : dets) det_boxes.push_back(d.box);
  Matrix scores = iou_matrix(det_boxes, predicted);
  for (int j = 0; j < n; ++j) {
    if (tracks_[static_cast<std::size_t>(j)].status == TrackStatus::dead) scores.col(j).setZero();
  }

  auto z_of = [&](int k) -> Vector { return bbox_to_z(dets[static_cast<std::size_t>(k)].box); };
  auto kf_match = [&](int k, int j) {
    Track& t = tracks_[static_cast<std::size_t>(j)];
    update_track(t, kf_update(t.belief, z_of(k), model_), dets[static_cast<std::size_t>(k)].confidence);
  };

  if (config_.mode == AssociationMode::binary) {
    for (const auto& [k, j] : linear_assignment(scores, config_.match_iou)) {
      kf_match(k, j);
      ++stats_.clear_matches;
    }
  } else {
    const AmbiguityPartition part = ambiguity_check(scores, {config_.tau_ambig, config_.match_iou});
    for (const auto& [k, j] : part.clear_pairs) {
      kf_match(k, j);
      ++stats_.clear_matches;
    }
    stats_.ambiguous_measurements = static_cast<int>(part.ambiguous_measurements.size());
    stats_.ambiguous_tracks = static_cast<int>(part.ambiguous_objects.size());
    if (!part.empty()) {
      const Matrix block = submatrix(scores, part.ambiguous_measurements, part.ambiguous_objects);
      const Matrix q = likelihood_from_scores(block, config_.alpha);
      for (const Component& c : connected_components(q)) {
        if (c.rows.empty() || c.cols.empty()) continue;
        std::vector<int> rows, cols;
        for (int r : c.rows) rows.push_back(part.ambiguous_measurements[static_cast<std::size_t>(r)]);
        for (int cc : c.cols) cols.push_back(part.ambiguous_objects[static_cast<std::size_t>(cc)]);

        if (static_cast<int>(std::min(rows.size(), cols.size())) > config_.max_block) {
          ++stats_.fallback_blocks;
          log::get().debug("frame {}: {}x{} ambiguous component solved by assignment", frame_, rows.size(),
                           cols.size());
          for (const auto& [lk, lj] : linear_assignment(submatrix(scores, rows, cols), config_.match_iou)) {
            kf_match(rows[static_cast<std::size_t>(lk)], cols[static_cast<std::size_t>(lj)]);
          }
          continue;
        }

        const WeightMatrix w = pkf_block_weights(LikelihoodMatrix(submatrix(q, c.rows, c.cols)));
        std::vector<WeightedMeasurement> list;
        for (std::size_t lj = 0; lj < cols.size(); ++lj) {
          list.clear();
          double best_w = 0.0;
          double conf = 0.0;
          for (std::size_t lk = 0; lk < rows.size(); ++lk) {
            const double wk = w.w(static_cast<Eigen::Index>(lk), static_cast<Eigen::Index>(lj));
            if (!(wk > config_.tau_weight)) continue;
            list.push_back({z_of(rows[lk]), wk});
            if (wk > best_w) {
              best_w = wk;
              conf = dets[static_cast<std::size_t>(rows[lk])].confidence;
            }
          }
          if (list.empty()) continue;
          Track& t = tracks_[static_cast<std::size_t>(cols[lj])];
          update_track(t, pkf_update(t.belief, list, model_), conf);
        }
      }
    }
  }

  // Detections that overlap no existing track start new ones.
  std::vector<Track> born;
  for (int k = 0; k < m; ++k) {
    const double best = n > 0 ? scores.row(k).maxCoeff() : 0.0;
    if (best >= config_.new_track_iou) continue;
    Track t;
    t.id = next_id_++;
    t.belief = init_box_belief(dets[static_cast<std::size_t>(k)].box, config_.init);
    t.confidence = dets[static_cast<std::size_t>(k)].confidence;
    born.push_back(std::move(t));
  }
  stats_.created = static_cast<int>(born.size());

  for (Track& t : tracks_) {
    if (t.status == TrackStatus::dead) continue;
    if (t.time_since_update > config_.max_age) {
      t.status = TrackStatus::dead;
    } else if (t.status == TrackStatus::tentative && t.time_since_update == 0 && t.hits >= config_.min_hits) {
      t.status = TrackStatus::confirmed;
    }
  }

  std::vector<TrackOutput> out;
  for (const Track& t : tracks_) {
    if (t.status == TrackStatus::confirmed && t.time_since_update == 0) {
      out.push_back({t.id, t.box(), t.confidence});
    }
  }

  const auto before = tracks_.size();
  std::erase_if(tracks_, [](const Track& t) { return t.status == TrackStatus::dead; });
  stats_.removed = static_cast<int>(before - tracks_.size());
  for (Track& t : born) tracks_.push_back(std::move(t));
  return out;
}

}  // namespace pkf::mot
