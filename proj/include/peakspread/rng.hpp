#pragma once

#include <cstdint>

namespace peakspread {

// Counter-based pseudo-random source: every output is a pure function of
// (seed, draw index, stream), so any partitioning of draws across workers
// reproduces the same values. Internally this indexes the SplitMix64
// sequence at position 2 * index + stream.
class CounterRng {
 public:
  static constexpr std::uint64_t kStreams = 2;
  static constexpr std::uint64_t kStreamPrimary = 0;  // class pick / b draw
  static constexpr std::uint64_t kStreamNoise = 1;

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t word(std::uint64_t index, std::uint64_t stream) const {
    const std::uint64_t counter = index * kStreams + stream;
    std::uint64_t x = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Uniform double strictly inside (0, 1): 53 random bits centred in the
  // open unit interval, so inverse-CDF sampling never sees 0 or 1.
  double uniform01(std::uint64_t index, std::uint64_t stream) const {
    return (static_cast<double>(word(index, stream) >> 11) + 0.5) *
           0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

}  // namespace peakspread
