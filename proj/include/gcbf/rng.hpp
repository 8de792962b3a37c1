// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gcbf {

// Seeded RNG with hand-mapped distributions. std::mt19937 output is fully
// specified by the standard; the distribution adapters in <random> are not,
// so the mappings live here to keep seeded artifacts identical across
// toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(static_cast<uint32_t>(seed ^ (seed >> 32))) {}

  uint32_t next_u32() { return gen_(); }

  // [0, 1)
  double uniform() { return next_u32() * 0x1p-32; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  float uniform_f(float lo, float hi) {
    return static_cast<float>(uniform(lo, hi));
  }

  // Box-Muller, one fresh pair of draws per value.
  double normal(double mean, double stddev) {
    double u1 = (next_u32() + 1.0) * 0x1p-32;  // (0, 1]
    double u2 = next_u32() * 0x1p-32;
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    return mean + stddev * z;
  }

 private:
  std::mt19937 gen_;
};

}  // namespace gcbf
