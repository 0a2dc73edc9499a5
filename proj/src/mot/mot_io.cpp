#include "pkf/mot/mot_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "pkf/core/errors.hpp"

namespace pkf::mot {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError("non-numeric field '" + std::string(field) + "'", line);
  }
  return v;
}

int to_integer(double v, const char* what, std::size_t line) {
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParseError(std::string(what) + " must be an integer", line);
  return static_cast<int>(v);
}

}  // namespace

std::vector<MotRecord> parse_mot(std::istream& in) {
  std::vector<MotRecord> out;
  std::string text;
  std::size_t line = 0;
  std::vector<double> fields;
  while (std::getline(in, text)) {
    ++line;
    const std::string_view row = trim(text);
    if (row.empty()) continue;
    fields.clear();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = row.find(',', start);
      fields.push_back(to_number(row.substr(start, comma - start), line));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() < 6) throw ParseError("expected at least 6 fields", line);
    MotRecord r;
    r.frame = to_integer(fields[0], "frame", line);
    if (r.frame < 1) throw ParseError("frame must be >= 1", line);
    r.id = to_integer(fields[1], "id", line);
    r.box = {fields[2], fields[3], fields[4], fields[5]};
    if (fields.size() > 6) r.confidence = fields[6];
    out.push_back(r);
  }
  return out;
}

std::vector<MotRecord> parse_mot_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return parse_mot(in);
}

FrameDetections group_detections(const std::vector<MotRecord>& records) {
  FrameDetections out;
  for (const MotRecord& r : records) out[r.frame].push_back({r.box, r.confidence, r.frame});
  return out;
}

FrameDetections parse_mot_detections(const std::filesystem::path& path) {
  return group_detections(parse_mot_file(path));
}

namespace {

std::string format_record(int frame, int id, const BBox& b, double conf) {
  return fmt::format("{},{},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},-1,-1,-1\n", frame, id, b.left, b.top, b.width,
                     b.height, conf);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_mot_records(const std::vector<MotRecord>& records, std::ostream& out) {
  for (const MotRecord& r : records) out << format_record(r.frame, r.id, r.box, r.confidence);
}

void write_mot_records(const std::vector<MotRecord>& records, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  write_mot_records(records, out);
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<MotRecord> detection_records(const FrameDetections& detections) {
  std::vector<MotRecord> out;
  for (const auto& [frame, dets] : detections) {
    for (const Detection& d : dets) out.push_back({frame, -1, d.box, d.confidence});
  }
  return out;
}

void write_mot_results(const TrackResults& results, std::ostream& out) {
  for (const auto& [frame, boxes] : results) {
    std::vector<TrackOutput> sorted = boxes;
    std::sort(sorted.begin(), sorted.end(), [](const TrackOutput& a, const TrackOutput& b) { return a.id < b.id; });
    for (const TrackOutput& t : sorted) out << format_record(frame, t.id, t.box, t.confidence);
  }
}

void write_mot_results(const TrackResults& results, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  write_mot_results(results, out);
  if (!out) throw Error("write failed for " + path.string());
}

SequenceResult track_sequence(const FrameDetections& detections, const TrackerConfig& config, int last_frame) {
  SequenceResult res;
  const int end = std::max(last_frame, detections.empty() ? 0 : detections.rbegin()->first);
  Tracker tracker(config);
  const std::vector<Detection> none;
  const auto t0 = std::chrono::steady_clock::now();
  for (int f = 1; f <= end; ++f) {
    const auto it = detections.find(f);
    std::vector<TrackOutput> out = tracker.step(it == detections.end() ? none : it->second);
    res.fallback_blocks += tracker.last_stats().fallback_blocks;
    if (!out.empty()) res.results[f] = std::move(out);
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.frames = end;
  res.health = tracker.health();
  return res;
}

}  // namespace pkf::mot
