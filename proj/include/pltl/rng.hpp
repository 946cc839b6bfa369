#pragma once

#include <cstdint>
#include <random>

namespace pltl {

/* splitmix64 step; used to derive independent substreams from a master seed
 * so that per-trajectory (and per-particle) sampling stays reproducible
 * regardless of evaluation order. */
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/* Inverse-CDF draw from a finite distribution given as a weight array
 * (weights need not be normalized). */
inline size_t sample_index(std::mt19937_64 &rng, const std::vector<double> &weights,
                           double total) {
  double u = uniform01(rng) * total;
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

} // namespace pltl
