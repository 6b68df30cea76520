#pragma once

#include <cstdint>

namespace fracprop {

/// Counter-based generator: the k-th draw of stream (seed, stream) is the
/// SplitMix64 finalizer applied to key + (k + 1) * 0x9E3779B97F4A7C15, with
/// key = seed ^ mix(stream + 0xD1B54A32D192ED03).
/// No hidden state beyond the counter, so any draw can be recomputed
/// independently and parallel streams never overlap in practice.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(seed ^ mix(stream + 0xD1B54A32D192ED03ull)) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t counter) const {
    return mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ull);
  }

  std::uint64_t next() { return at(counter_++); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace fracprop
