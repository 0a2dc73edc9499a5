#include "pkf/core/box.hpp"

#include <cmath>
#include <sstream>

#include "pkf/core/errors.hpp"

namespace pkf {

Eigen::Vector4d bbox_to_z(const BBox& box) {
  if (!(box.width > 0) || !(box.height > 0)) {
    std::ostringstream os;
    os << "box must have positive size, got " << box.width << "x" << box.height;
    throw InvalidDetection(os.str());
  }
  return {box.left + box.width / 2.0, box.top + box.height / 2.0, box.width * box.height,
          box.width / box.height};
}

BBox z_to_bbox(const Eigen::Ref<const Vector>& z) {
  if (z.size() < 4) throw ContractViolation("z_to_bbox needs at least 4 entries");
  const double s = z[2];
  const double r = z[3];
  if (!(s > 0) || !(r > 0)) {
    std::ostringstream os;
    os << "degenerate box state: area " << s << ", aspect " << r;
    throw DegenerateState(os.str());
  }
  const double w = std::sqrt(s * r);
  const double h = std::sqrt(s / r);
  return {z[0] - w / 2.0, z[1] - h / 2.0, w, h};
}

}  // namespace pkf
