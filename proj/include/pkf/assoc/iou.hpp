#pragma once

#include <span>

#include "pkf/core/box.hpp"
#include "pkf/core/types.hpp"

namespace pkf {

/// Intersection over union of two boxes; symmetric, in [0, 1].
double iou(const BBox& a, const BBox& b);

/// scores(k, j) = iou(rows[k], cols[j]).
Matrix iou_matrix(std::span<const BBox> rows, std::span<const BBox> cols);

}  // namespace pkf
