#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace qstc {

/// Counter-based random stream. The state advances by a fixed odd increment
/// and every output is an avalanche mix of the counter, so a stream is fully
/// determined by its key and draw index — results never depend on thread
/// scheduling. Streams for Monte Carlo trials are keyed by
/// (seed, scheme id, snr index, trial index).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t stream_key) : state_(stream_key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static Rng for_trial(std::uint64_t seed, std::uint32_t scheme_id,
                       std::uint32_t snr_index, std::uint64_t trial_index) {
    std::uint64_t key = mix(seed + 0x9e3779b97f4a7c15ULL);
    key = mix(key ^ (std::uint64_t{scheme_id} << 32 | snr_index));
    key = mix(key ^ trial_index);
    return Rng(key);
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1p-53; }

  /// Uniform integer in [0, n).
  std::uint32_t uniform_index(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>((*this)()) * n) >> 64);
  }

  /// Circularly symmetric complex normal with E|z|^2 = variance; the real and
  /// imaginary parts are independent normals with variance/2 each. Marsaglia
  /// polar sampling: exact and trig-free.
  std::complex<double> complex_normal(double variance) {
    while (true) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        // u, v restricted to the unit disk: u sqrt(-2 ln s / s) and
        // v sqrt(-2 ln s / s) are independent standard normals; scaling by
        // sqrt(variance/2) gives the circularly symmetric complex normal.
        const double scale = std::sqrt(-variance * std::log(s) / s);
        return {u * scale, v * scale};
      }
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace qstc
