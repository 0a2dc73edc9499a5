#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "pkf/core/box.hpp"
#include "pkf/mot/tracker.hpp"

namespace pkf::mot {

/// One line of a MOT-Challenge text file: frame,id,left,top,width,height,conf,...
struct MotRecord {
  int frame = 1;
  int id = -1;
  BBox box;
  double confidence = 1.0;
};

/// Parses comma-separated lines with at least six fields; a missing
/// confidence defaults to 1 and trailing fields must be numeric but are
/// ignored. Blank lines are skipped. Throws ParseError with the 1-based line
/// number on malformed input or frame < 1.
std::vector<MotRecord> parse_mot(std::istream& in);
std::vector<MotRecord> parse_mot_file(const std::filesystem::path& path);

/// Detections grouped by frame; the id column is ignored.
using FrameDetections = std::map<int, std::vector<Detection>>;
FrameDetections group_detections(const std::vector<MotRecord>& records);
FrameDetections parse_mot_detections(const std::filesystem::path& path);

/// Lines frame,id,left,top,width,height,conf,-1,-1,-1 with two decimals, in
/// the given order.
void write_mot_records(const std::vector<MotRecord>& records, std::ostream& out);
void write_mot_records(const std::vector<MotRecord>& records, const std::filesystem::path& path);

/// Detections as id -1 records, frame-major.
std::vector<MotRecord> detection_records(const FrameDetections& detections);

/// Emitted boxes per frame.
using TrackResults = std::map<int, std::vector<TrackOutput>>;

/// Lines frame,id,left,top,width,height,conf,-1,-1,-1 with two decimals,
/// frame-major then id-major.
void write_mot_results(const TrackResults& results, std::ostream& out);
void write_mot_results(const TrackResults& results, const std::filesystem::path& path);

struct SequenceResult {
  TrackResults results;
  int frames = 0;
  double seconds = 0.0;
  CovarianceHealth health;
  int fallback_blocks = 0;
};

/// Runs a fresh tracker over frames 1..last detection frame (frames without
/// detections still advance the lifecycle). `last_frame` > 0 extends the run.
SequenceResult track_sequence(const FrameDetections& detections, const TrackerConfig& config,
                              int last_frame = 0);

}  // namespace pkf::mot
