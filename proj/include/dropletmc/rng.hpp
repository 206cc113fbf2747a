#pragma once

#include <cstdint>
#include <random>

namespace dropletmc {

// Standard normal generator with a fully specified algorithm, so seeded
// sequences match across standard libraries: 64-bit Mersenne Twister,
// top 53 bits mapped to [0, 1), Marsaglia polar transform, second variate
// discarded.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double standard_normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace dropletmc
