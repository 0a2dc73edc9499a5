#include "pkf/mot/metrics.hpp"

#include <map>

#include "pkf/assoc/iou.hpp"

namespace pkf::mot {

int id_switch_count(const std::vector<MotRecord>& result, const std::vector<MotRecord>& ground_truth,
                    double min_iou) {
  std::map<int, std::vector<const MotRecord*>> by_frame;
  for (const MotRecord& r : result) by_frame[r.frame].push_back(&r);

  std::map<int, std::vector<const MotRecord*>> gt_frames;
  for (const MotRecord& g : ground_truth) gt_frames[g.frame].push_back(&g);

  std::map<int, int> last_match;  // gt id -> track id
  int switches = 0;
  for (const auto& [frame, gts] : gt_frames) {
    const auto it = by_frame.find(frame);
    if (it == by_frame.end()) continue;
    for (const MotRecord* g : gts) {
      const MotRecord* best = nullptr;
      double best_iou = min_iou;
      for (const MotRecord* r : it->second) {
        const double v = iou(g->box, r->box);
        if (v >= best_iou) {
          // Ties keep the first record in file order.
          if (best == nullptr || v > best_iou) best = r;
          best_iou = v;
        }
      }
      if (best == nullptr) continue;
      const auto prev = last_match.find(g->id);
      if (prev != last_match.end() && prev->second != best->id) ++switches;
      last_match[g->id] = best->id;
    }
  }
  return switches;
}

std::vector<MotRecord> to_records(const TrackResults& results) {
  std::vector<MotRecord> out;
  for (const auto& [frame, boxes] : results) {
    for (const TrackOutput& t : boxes) out.push_back({frame, t.id, t.box, t.confidence});
  }
  return out;
}

}  // namespace pkf::mot
