#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace hyperlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based 64-bit generator: the i-th output (i = 1, 2, ...) is
/// mix64(seed + i * 0x9E3779B97F4A7C15). Output i depends only on (seed, i),
/// so streams are reproducible on any platform and can be skipped ahead.
class CounterRng {
 public:
  static constexpr std::string_view algorithm = "splitmix64-ctr";
  static constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
  using result_type = std::uint64_t;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  explicit CounterRng(std::uint64_t seed) noexcept : key_(seed) {}

  std::uint64_t operator()() noexcept { return mix64(key_ + (++counter_) * gamma); }

  std::uint64_t counter() const noexcept { return counter_; }
  void discard(std::uint64_t steps) noexcept { counter_ += steps; }

  /// Uniform on [0, 1) with 53 bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Number of trials up to and including the first success:
  /// P(G = g) = (1 - p)^(g - 1) p, g >= 1. Requires 0 < p <= 1.
  std::uint64_t geometric(double p) noexcept {
    if (p >= 1.0) return 1;
    const double g = std::floor(std::log(uniform_pos()) / std::log1p(-p));
    if (!(g < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(g) + 1;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed for stream `index` derived from `base`. Used for per-trial seeds so
/// any trial can be replayed in isolation.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base ^ mix64(index + CounterRng::gamma));
}

}  // namespace hyperlab
