#include "spde/wiener.hpp"

#include <cmath>
#include <stdexcept>

#include "spde/rng.hpp"

namespace spde {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Node id for the bridge Gaussian at (level, index, component): the root
// (level 0) fixes W(T), level L >= 1 fills midpoints of 2^{L-1} intervals.
std::uint64_t node_id(int level, std::uint64_t index, int component) {
  return (static_cast<std::uint64_t>(level) << 56) |
         (static_cast<std::uint64_t>(component) << 48) | index;
}

}  // namespace

WienerPath WienerPath::sample(int d, double horizon, int steps, std::uint64_t seed,
                              std::uint64_t path_index) {
  if (d < 1) throw std::invalid_argument("WienerPath: dimension must be >= 1");
  if (horizon <= 0.0) throw std::invalid_argument("WienerPath: horizon must be > 0");
  if (!is_power_of_two(steps))
    throw std::invalid_argument("WienerPath: steps must be a power of two");

  WienerPath p;
  p.d_ = d;
  p.steps_ = steps;
  p.horizon_ = horizon;
  p.seed_ = seed;
  p.path_index_ = path_index;
  p.values_.assign(static_cast<std::size_t>(steps + 1) * d, 0.0);

  auto gauss = [&](int level, std::uint64_t index, int i) {
    return counter_gaussian(seed, RngStream::kWienerBridge, path_index,
                            node_id(level, index, i));
  };

  for (int i = 0; i < d; ++i)
    p.values_[static_cast<std::size_t>(steps) * d + i] =
        std::sqrt(horizon) * gauss(0, 0, i);

  int levels = 0;
  while ((1 << levels) < steps) ++levels;
  // Level L bisects the 2^{L-1} intervals of the previous grid; values at
  // already-placed times are reused untouched, which is what makes
  // refinement coupling exact.
  for (int level = 1; level <= levels; ++level) {
    const int segments = 1 << (level - 1);
    const int stride = steps / segments;      // coarse interval in fine steps
    const double seg_len = horizon / segments;
    for (int s = 0; s < segments; ++s) {
      const int left = s * stride;
      const int right = left + stride;
      const int mid = left + stride / 2;
      for (int i = 0; i < d; ++i) {
        const double a = p.values_[static_cast<std::size_t>(left) * d + i];
        const double b = p.values_[static_cast<std::size_t>(right) * d + i];
        p.values_[static_cast<std::size_t>(mid) * d + i] =
            0.5 * (a + b) +
            std::sqrt(seg_len / 4.0) * gauss(level, static_cast<std::uint64_t>(s), i);
      }
    }
  }
  return p;
}

WienerPath WienerPath::from_values(int d, double horizon, std::vector<double> values,
                                   std::uint64_t seed, std::uint64_t path_index) {
  if (d < 1 || values.size() % d != 0 || values.size() < 2 * static_cast<std::size_t>(d))
    throw std::invalid_argument("WienerPath: bad value array");
  WienerPath p;
  p.d_ = d;
  p.steps_ = static_cast<int>(values.size() / d) - 1;
  p.horizon_ = horizon;
  p.seed_ = seed;
  p.path_index_ = path_index;
  p.values_ = std::move(values);
  return p;
}

WienerPath WienerPath::slice(int j0, int j1) const {
  if (j0 < 0 || j1 <= j0 || j1 > steps_)
    throw std::invalid_argument("WienerPath::slice: bad range");
  std::vector<double> vals(static_cast<std::size_t>(j1 - j0 + 1) * d_);
  for (int j = j0; j <= j1; ++j)
    for (int i = 0; i < d_; ++i)
      vals[static_cast<std::size_t>(j - j0) * d_ + i] = value(j, i) - value(j0, i);
  return from_values(d_, (j1 - j0) * dt(), std::move(vals), seed_, path_index_);
}

std::uint64_t WienerPath::content_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  mix(&d_, sizeof(d_));
  mix(&horizon_, sizeof(horizon_));
  mix(values_.data(), values_.size() * sizeof(double));
  return h;
}

}  // namespace spde
