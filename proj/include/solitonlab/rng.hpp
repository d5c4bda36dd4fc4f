#pragma once

#include <cstdint>

namespace solitonlab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-based uniform draw in [0, 1) for (seed, trial, stream). Every trial
/// owns its own sub-stream, so results do not depend on evaluation order.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t trial,
                                 std::uint64_t stream) noexcept {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(trial * 4 + stream));
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

}  // namespace solitonlab
