// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MODFRAME_RNG_HPP
#define MODFRAME_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace modframe {

// All randomized routines take an explicit engine so that identical seeds
// give identical results. The std::* distributions are implementation
// defined, so the samplers below draw directly from the (fully specified)
// mt19937_64 bit stream.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1), 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

/// Standard real Gaussian via Box-Muller.
inline double gaussian(Rng& rng) {
  double u = uniform_unit(rng);
  while (u <= 0.0) u = uniform_unit(rng);
  const double v = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

/// Standard complex Gaussian (unit variance per real coordinate).
inline std::complex<double> complex_gaussian(Rng& rng) {
  const double re = gaussian(rng);
  const double im = gaussian(rng);
  return {re, im};
}

}  // namespace modframe

#endif  // MODFRAME_RNG_HPP
