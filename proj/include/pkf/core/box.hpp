#pragma once

#include "pkf/core/types.hpp"

namespace pkf {

/// Axis-aligned box in pixels: top-left corner plus size.
struct BBox {
  double left = 0;
  double top = 0;
  double width = 0;
  double height = 0;

  double right() const { return left + width; }
  double bottom() const { return top + height; }
  double area() const { return width * height; }

  bool operator==(const BBox&) const = default;
};

/// One detector output.
struct Detection {
  BBox box;
  double confidence = 1.0;
  int frame = 1;

  bool operator==(const Detection&) const = default;
};

/// [u, v, s, r]: box center, area and aspect ratio (width / height).
/// Throws InvalidDetection on non-positive width or height.
Eigen::Vector4d bbox_to_z(const BBox& box);

/// Inverse of bbox_to_z. Only the first four entries of z are read, so a
/// full 7-dim box state may be passed. Throws DegenerateState if s <= 0 or r <= 0.
BBox z_to_bbox(const Eigen::Ref<const Vector>& z);

}  // namespace pkf
