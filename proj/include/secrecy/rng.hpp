#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "secrecy/errors.hpp"

namespace secrecy {

/// Splittable pseudo-random stream. Streams are identified by a (seed,
/// stream-id) pair; the pair fully determines the sample sequence, so
/// Monte Carlo work can be partitioned by stream-id and reassembled in any
/// order without changing the result.
///
/// Internally: xoshiro256++ seeded through splitmix64 of the (seed, stream)
/// pair. Gaussian variates use Box-Muller on the raw 64-bit output, so the
/// sequence does not depend on any standard-library distribution.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {
    std::uint64_t x = seed ^ 0x9e3779b97f4a7c15ULL;
    x = splitmix(x);
    x ^= splitmix(stream_id + 0xbf58476d1ce4e5b9ULL);
    for (auto& s : state_) {
      x = splitmix(x);
      s = x;
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal variate (Box-Muller; caches the second of each pair).
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

  /// Circularly symmetric complex Gaussian with E|z|^2 = variance
  /// (real and imaginary parts are independent N(0, variance/2)).
  std::complex<double> complex_gaussian(double variance) {
    if (variance < 0.0) throw numeric_domain_error("complex_gaussian: negative variance");
    if (variance == 0.0) return {0.0, 0.0};
    const double scale = std::sqrt(variance / 2.0);
    const double re = gaussian();
    const double im = gaussian();
    return {scale * re, scale * im};
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_[4];
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace secrecy
