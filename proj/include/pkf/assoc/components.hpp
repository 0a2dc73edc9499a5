#pragma once

#include <vector>

#include "pkf/core/types.hpp"

namespace pkf {

/// Connected component of the bipartite graph whose edges are the strictly
/// positive entries of a matrix.
struct Component {
  std::vector<int> rows;
  std::vector<int> cols;
};

/// Components in order of their smallest row (rows first, then column-only
/// components by smallest column). Indices inside each component ascend.
/// Isolated rows and isolated columns come out as their own components.
std::vector<Component> connected_components(const Matrix& a);

/// Extracts a(rows, cols).
Matrix submatrix(const Matrix& a, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace pkf
