#include "pkf/assoc/components.hpp"

#include <algorithm>
#include <numeric>

namespace pkf {

namespace {

struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<Component> connected_components(const Matrix& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  // Nodes 0..m-1 are rows, m..m+n-1 are columns.
  DisjointSets sets(m + n);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < n; ++j) {
      if (a(k, j) > 0) sets.unite(k, m + j);
    }
  }
  std::vector<int> slot(m + n, -1);
  std::vector<Component> out;
  for (int node = 0; node < m + n; ++node) {
    const int root = sets.find(node);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    Component& c = out[slot[root]];
    if (node < m) {
      c.rows.push_back(node);
    } else {
      c.cols.push_back(node - m);
    }
  }
  return out;
}

Matrix submatrix(const Matrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(rows[i], cols[j]);
    }
  }
  return s;
}

}  // namespace pkf
