#include "dropletmc/rng.hpp"

#include <cmath>

namespace dropletmc {

double GaussianSampler::standard_normal() {
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

}  // namespace dropletmc
