#pragma once

#include <cstdint>
#include <vector>

#include "pkf/mot/mot_io.hpp"

namespace pkf::mot {

/// Synthetic detections with their ground truth.
struct Sequence {
  FrameDetections detections;
  std::vector<MotRecord> ground_truth;
  int frames = 0;
};

struct PedestrianOptions {
  int n_tracks = 20;
  int frames = 1000;
  double image_width = 1920;
  double image_height = 1080;
  /// Pixel standard deviation added to every detected box coordinate.
  double jitter = 2.0;
  double miss_prob = 0.05;
  /// Expected false detections per frame, spread over the image.
  double false_per_frame = 1.0;
  std::uint64_t seed = 7;
};

/// Walkers with pedestrian-shaped boxes drifting at a few pixels per frame
/// and bouncing off the image border. Every walker stays in view for the
/// whole sequence.
Sequence pedestrian_sequence(const PedestrianOptions& opts = {});

struct CrossingOptions {
  int frames = 30;
  /// Frame at which the two boxes coincide.
  int cross_frame = 16;
  double speed = 4.0;
  double box_width = 60.0;
  double box_height = 150.0;
  /// Vertical offset between the two walkers.
  double lane_gap = 6.0;
  /// Half-width of the overlap window around cross_frame.
  int window = 4;
  /// Inside the window the detector keeps reporting each box on the side it
  /// approached from, `hold_gap` apart, until the walkers separate.
  double hold_gap = 10.0;
};

/// Two equal boxes walking toward each other along a horizontal line,
/// overlapping around cross_frame. A tracker that commits to one detection
/// per track stalls inside the window and leaves it on the wrong walker.
Sequence crossing_sequence(const CrossingOptions& opts = {});

}  // namespace pkf::mot
