#pragma once

#include <cstdint>

namespace kerrtap {

/// SplitMix64 (Steele, Lea & Flood, OOPSLA 2014). The state advances by a
/// fixed odd constant per draw, so jumping to the k-th draw of a seed's
/// sequence is O(1): construct with skip = k. Every stochastic decision in
/// the simulator consumes exactly one draw from a documented offset, which
/// is what makes chunked runs reproduce the single-threaded stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t skip = 0)
      : state_(seed + skip * kGamma) {}

  std::uint64_t next_u64() { return mix(state_ += kGamma); }

  /// Uniform in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bool() { return next_u64() & 1u; }

  /// The bijective output mixer, usable as a standalone 64-bit hash.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t state_;
};

}  // namespace kerrtap
