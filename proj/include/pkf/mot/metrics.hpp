#pragma once

#include <vector>

#include "pkf/mot/mot_io.hpp"

namespace pkf::mot {

/// For every ground-truth identity, each frame takes the result box of that
/// frame with the highest IoU (at least min_iou). A switch is counted when
/// the matched track id differs from the id matched the previous time this
/// identity was matched.
int id_switch_count(const std::vector<MotRecord>& result, const std::vector<MotRecord>& ground_truth,
                    double min_iou = 0.5);

/// Result boxes as records, for comparisons against ground truth.
std::vector<MotRecord> to_records(const TrackResults& results);

}  // namespace pkf::mot
