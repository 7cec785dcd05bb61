#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace linex {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state advanced by the golden-ratio
/// increment, output passed through the Stafford variant-13 mixer. Chosen over
/// the std distributions because their output is implementation-defined; every
/// draw here is specified bit-for-bit.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Independent stream derived from this one (split).
  constexpr SplitMix64 split() noexcept { return SplitMix64(next()); }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] (inclusive). Modulo bias is below 2^-40 for
  /// the small ranges used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Standard normal draw via Box-Muller; one uniform pair per call, second
  /// variate discarded so the stream position depends only on the call count.
  double normal() noexcept {
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

private:
  std::uint64_t state_;
};

} // namespace linex
