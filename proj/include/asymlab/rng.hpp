#pragma once

// Self-contained deterministic RNG (splitmix64 core, Box-Muller gaussians).
// std::normal_distribution is implementation-defined across standard
// libraries, so outputs would not be reproducible with it.

#include <cmath>
#include <cstdint>

namespace asymlab {

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(mix(seed + 0x9e3779b97f4a7c15ull)) {}

  // Counter-based substream derivation: all task randomness flows from one
  // seed plus a task index, so serial and parallel schedules agree.
  static Rng derived(uint64_t seed, uint64_t stream) {
    Rng r(seed);
    r.state_ = mix(r.state_ ^ mix(stream * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull));
    return r;
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace asymlab
