#pragma once

#include <cstdint>
#include <vector>

namespace spde {

/// One realization of the d-dimensional driving noise on a uniform grid.
/// Values are built by dyadic Brownian-bridge refinement, so a path sampled
/// with 2J steps shares the coarse-grid values of the J-step path bit for
/// bit (coupled refinement); step counts must be powers of two.
class WienerPath {
 public:
  static WienerPath sample(int d, double horizon, int steps, std::uint64_t seed,
                           std::uint64_t path_index);
  /// Explicit values (tests, slicing); (steps+1) x d row-major.
  static WienerPath from_values(int d, double horizon, std::vector<double> values,
                                std::uint64_t seed = 0, std::uint64_t path_index = 0);

  int dim() const { return d_; }
  int steps() const { return steps_; }
  double horizon() const { return horizon_; }
  double dt() const { return horizon_ / steps_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t path_index() const { return path_index_; }

  double value(int j, int i) const { return values_[static_cast<std::size_t>(j) * d_ + i]; }
  double increment(int j, int i) const { return value(j + 1, i) - value(j, i); }

  /// Restriction to steps [j0, j1), rebased to start at zero.
  WienerPath slice(int j0, int j1) const;

  /// FNV-1a over the value bytes; identity of the realization.
  std::uint64_t content_hash() const;

 private:
  WienerPath() = default;
  int d_ = 0;
  int steps_ = 0;
  double horizon_ = 0.0;
  std::uint64_t seed_ = 0;
  std::uint64_t path_index_ = 0;
  std::vector<double> values_;  // (steps+1) x d
};

}  // namespace spde
