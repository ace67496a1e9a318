#pragma once

#include <cmath>
#include <cstdint>

#include "swarmcov/vec3.hpp"

namespace swarmcov {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

/// Counter-free xoshiro256** generator with explicit state, so that results
/// are identical across platforms and standard-library versions. Every
/// distribution below is hand-rolled for the same reason.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = detail::splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 bits of randomness.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Marsaglia's polar method.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  /// Uniform direction on the unit sphere.
  Vec3 unit_vector() {
    Vec3 g{gaussian(), gaussian(), gaussian()};
    double n = norm(g);
    while (n < 1e-12) {
      g = Vec3{gaussian(), gaussian(), gaussian()};
      n = norm(g);
    }
    return g / n;
  }

  /// Uniform point inside the closed unit ball.
  Vec3 unit_ball() { return unit_vector() * std::cbrt(uniform01()); }

 private:
  std::uint64_t s_[4] = {};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Decorrelated substream seeds; used for per-agent and per-step streams so
/// that parallel evaluation is deterministic.
inline std::uint64_t substream_seed(std::uint64_t run_seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = run_seed;
  std::uint64_t h = detail::splitmix64(s);
  s ^= a + 0x9e3779b97f4a7c15ULL;
  h ^= detail::splitmix64(s);
  s ^= b + 0xd1b54a32d192ed03ULL;
  h ^= detail::splitmix64(s);
  return h;
}

}  // namespace swarmcov
