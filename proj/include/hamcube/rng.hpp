#pragma once

#include <cmath>
#include <cstdint>

namespace hamcube {

namespace detail {

// Finalizer from splitmix64; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/* Counter-based generator: the stream is fully determined by (seed, stream),
 * so independent vertices/trials/restarts can each own a generator without
 * any shared state.  Output is identical across platforms and thread counts. */
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(detail::mix64(seed) ^ detail::mix64(detail::mix64(stream) + 0x5851f42d4c957f2dULL)) {}

  std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // uniform in (0, 1), never exactly 0 or 1
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // standard normal via Box-Muller, caching the second deviate
  double next_normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace hamcube
