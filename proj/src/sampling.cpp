// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/sampling.hpp"

#include <cmath>
#include <numbers>

#include "starlike/error.hpp"

namespace starlike {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = uniform();
  } while (u <= 0.0);
  const double v = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

std::vector<unsigned> first_primes(std::size_t n) {
  std::vector<unsigned> out;
  for (unsigned c = 2; out.size() < n; ++c) {
    bool prime = true;
    for (unsigned p : out) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return result;
}

}  // namespace

Halton::Halton(std::size_t dim, std::uint64_t seed) : primes_(first_primes(dim)), shift_(dim) {
  Rng rng(seed);
  for (auto& s : shift_) s = rng.uniform();
}

void Halton::next(std::span<double> out) {
  for (std::size_t d = 0; d < out.size(); ++d) {
    double v = radical_inverse(index_, primes_[d]) + shift_[d];
    out[d] = v - std::floor(v);
  }
  ++index_;
}

Vector random_unit(const Space& space, Rng& rng, std::size_t k) {
  const std::size_t m = space.dim();
  if (k >= m) throw Error(ErrorCode::DimensionExhausted, "no unit vectors in X/V_M");
  Vector v(m, 0.0);
  for (;;) {
    for (std::size_t i = k; i < m; ++i) v[i] = rng.normal();
    const double n = space.quotient_norm(v, k);
    if (n > 1e-12) {
      for (auto& c : v) c /= n;
      return v;
    }
  }
}

Vector random_box(std::size_t dim, double half, Rng& rng) {
  Vector v(dim);
  for (auto& c : v) c = rng.uniform(-half, half);
  return v;
}

}  // namespace starlike
