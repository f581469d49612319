#pragma once

#include <array>
#include <cstdint>

namespace spde {

/// Philox4x32-10 keyed counter block cipher; the per-draw randomness source.
/// Same (key, counter) gives the same block on every platform and thread.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        const std::array<std::uint32_t, 4>& counter);

/// Inverse standard normal CDF (Wichura's PPND16), |relative error| < 1e-15.
double normal_icdf(double u);

/// Independent purposes draw from disjoint key streams.
enum class RngStream : std::uint32_t {
  kWienerBridge = 1,
  kGammaSample = 2,
  kInitialCondition = 3,
  kProbe = 4,
  kSuite = 5,
};

/// Standard normal draw fully determined by (seed, stream, id0, id1).
double counter_gaussian(std::uint64_t seed, RngStream stream, std::uint64_t id0,
                        std::uint64_t id1);

/// Uniform draw on (0,1), same keying scheme.
double counter_uniform(std::uint64_t seed, RngStream stream, std::uint64_t id0,
                       std::uint64_t id1);

}  // namespace spde
