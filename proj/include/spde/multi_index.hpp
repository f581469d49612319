#pragma once

#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace spde {

/// Derivative multi-index: one non-negative order per torus axis.
struct MultiIndex {
  std::vector<int> comps;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> c) : comps(std::move(c)) {
    for (int v : comps)
      if (v < 0) throw std::invalid_argument("MultiIndex: negative component");
  }
  MultiIndex(std::initializer_list<int> c) : MultiIndex(std::vector<int>(c)) {}

  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(dim, 0)); }

  int dim() const { return static_cast<int>(comps.size()); }
  int order() const { return std::accumulate(comps.begin(), comps.end(), 0); }
  int operator[](int axis) const { return comps[axis]; }

  bool operator==(const MultiIndex& o) const { return comps == o.comps; }
  bool operator<(const MultiIndex& o) const { return comps < o.comps; }

  MultiIndex plus(int axis) const {
    MultiIndex r = *this;
    r.comps[axis] += 1;
    return r;
  }
  MultiIndex operator+(const MultiIndex& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    MultiIndex r = *this;
    for (int a = 0; a < dim(); ++a) r.comps[a] += o.comps[a];
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (int a = 0; a < dim(); ++a) s += (a ? "," : "") + std::to_string(comps[a]);
    return s + ")";
  }
};

/// All multi-indices of dimension `dim` with order <= m, lexicographic.
std::vector<MultiIndex> multi_indices_up_to(int dim, int m);

/// All multi-indices of dimension `dim` with order == m.
std::vector<MultiIndex> multi_indices_of_order(int dim, int m);

}  // namespace spde
