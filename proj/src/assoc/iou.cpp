#include "pkf/assoc/iou.hpp"

#include <algorithm>

namespace pkf {

double iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.left, b.left);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.top, b.top);
  if (iw <= 0 || ih <= 0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

Matrix iou_matrix(std::span<const BBox> rows, std::span<const BBox> cols) {
  Matrix s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = iou(rows[k], cols[j]);
    }
  }
  return s;
}

}  // namespace pkf
