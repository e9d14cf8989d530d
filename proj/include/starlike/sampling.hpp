// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_SAMPLING_HPP
#define STARLIKE_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "starlike/normed_space.hpp"

namespace starlike {

/// Mixes a base seed with a task index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Portable random stream: the engine output is fixed by the standard, and the
/// real-valued conversions below are ours, so streams match across stdlibs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, cached second variate).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Randomly shifted Halton sequence in [0,1)^dim.
class Halton {
 public:
  Halton(std::size_t dim, std::uint64_t seed);
  void next(std::span<double> out);

 private:
  std::vector<unsigned> primes_;
  std::vector<double> shift_;
  std::uint64_t index_ = 1;
};

/// Gaussian direction supported on coordinates k+1..M, scaled to unit
/// quotient norm in X/V_k (k = 0 gives a unit vector of X).
Vector random_unit(const Space& space, Rng& rng, std::size_t k = 0);

/// Uniform point of the coordinate box [-half, half]^M.
Vector random_box(std::size_t dim, double half, Rng& rng);

}  // namespace starlike

#endif  // STARLIKE_SAMPLING_HPP
