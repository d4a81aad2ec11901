#pragma once

#include <cmath>
#include <cstdint>

namespace dpsqkd {

// splitmix64 finalizer (Steele/Lea/Vigna). Fixed bit-exact algorithm so that
// seeded results reproduce across platforms and standard-library versions;
// std::*_distribution is implementation-defined and would not.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-derived random stream: (seed, stream_id) -> independent sequence.
// One stream per simulation block / per sampled state, so results do not
// depend on how work is partitioned across workers.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : state_(mix64(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_double() < p; }

  // standard normal via Box-Muller; second value of each pair is cached
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Poisson by CDF inversion (sequential search). Exact and fast for the
  // small means used throughout (mean <= ~1).
  int next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double u = next_double();
    double term = std::exp(-mean);
    double cum = term;
    int k = 0;
    while (u >= cum && k < 1000) {
      ++k;
      term *= mean / k;
      cum += term;
    }
    return k;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dpsqkd
