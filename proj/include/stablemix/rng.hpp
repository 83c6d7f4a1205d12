#pragma once

#include <cstdint>

namespace stablemix {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output of stream (seed, stream) is
/// mix64(key + i * golden) with key = seed ^ mix64(stream * golden).
/// Stream 0 reproduces the reference SplitMix64 sequence seeded with `seed`,
/// which is what the test vectors pin.
class RngState {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), key_(seed ^ mix64(stream * kGolden)) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Unit-rate exponential.
  double exponential();

  /// Standard normal (Box-Muller, one variate per call).
  double normal();

  /// Independent generator for sub-stream `index` of this one.
  RngState split(std::uint64_t index) const {
    return RngState(seed_, mix64(stream_ * kGolden + index + 1));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace stablemix
