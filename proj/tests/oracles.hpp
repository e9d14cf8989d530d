// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations used by the tests. They are written from the
// definitions and share no code with the library beyond the norm itself.

#ifndef STARLIKE_TESTS_ORACLES_HPP
#define STARLIKE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <functional>
#include <vector>

namespace oracle {

/// Exact rational with 64-bit parts, enough for the template constants.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational(std::int64_t n = 0, std::int64_t d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// (R + 2r) / r with R = a + 2b + c/delta, c = 8 (variant A) or 6 (B).
inline Rational k_bound(Rational a, Rational b, Rational r, Rational delta, std::int64_t c) {
  const Rational R = a + Rational(2) * b + Rational(c) / delta;
  return (R + Rational(2) * r) / r;
}

/// Planar regions straight from their set definitions (variant 'A' or 'B').
inline bool in_u0(char v, double x, double y, double m = 0.0) {
  if (v == 'A') return std::abs(x) + std::abs(y) <= 2.0 - m;
  return std::abs(x) + 2.0 * std::abs(y) <= 3.0 - m && std::abs(x) <= 2.0 - m;
}
inline bool in_u1(char v, double x, double y, double m = 0.0) {
  const double diag = v == 'A' ? x + y - 2.0 : x + 2.0 * y - 3.0;
  return x >= m && x <= 2.0 - m && y >= m && diag >= m;
}
/// Region index 0..4, or 5 outside; lowest index wins on overlaps.
inline int classify(char v, double x, double y) {
  if (in_u0(v, x, y)) return 0;
  if (in_u1(v, x, y)) return 1;
  if (in_u1(v, x, -y)) return 2;
  if (in_u1(v, -x, -y)) return 3;
  if (in_u1(v, -x, y)) return 4;
  return 5;
}
inline bool strictly_in(char v, int region, double x, double y, double m) {
  switch (region) {
    case 0: return in_u0(v, x, y, m);
    case 1: return in_u1(v, x, y, m);
    case 2: return in_u1(v, x, -y, m);
    case 3: return in_u1(v, -x, -y, m);
    default: return in_u1(v, -x, y, m);
  }
}

using Norm = std::function<double(const std::vector<double>&)>;

/// min over lambda in [x_i - half, x_i + half]^k of norm(x - sum_i lambda_i e_i),
/// i < k. An exhaustive grid with 2*coarse+1 nodes per axis is followed by
/// exhaustive grids of radius `radius` cells around the best node, the cell
/// shrinking by `shrink` each time until it is below `finest`. Polyhedral norms
/// have sharp minima, so near-optimal nodes stay close to the minimizer set.
inline double quotient_grid(const Norm& norm, const std::vector<double>& x, std::size_t k, double half,
                            long coarse = 100, long radius = 5, double shrink = 10.0, double finest = 1e-10) {
  std::vector<double> best_lambda(x.begin(), x.begin() + static_cast<long>(k));
  double best = std::numeric_limits<double>::infinity();
  double step = half / static_cast<double>(coarse);
  long n = coarse;
  std::vector<double> y = x;
  for (;;) {
    const std::vector<double> base = best_lambda;
    std::vector<long> idx(k, -n);
    for (;;) {
      for (std::size_t i = 0; i < k; ++i) y[i] = x[i] - (base[i] + step * static_cast<double>(idx[i]));
      const double v = norm(y);
      if (v < best) {
        best = v;
        for (std::size_t i = 0; i < k; ++i) best_lambda[i] = base[i] + step * static_cast<double>(idx[i]);
      }
      std::size_t i = 0;
      while (i < k && idx[i] == n) idx[i++] = -n;
      if (i == k) break;
      ++idx[i];
    }
    if (k == 0 || step < finest) break;
    step /= shrink;
    n = radius * static_cast<long>(shrink);
  }
  return best;
}

/// Nearest site among an explicit list, first in (norm, lex) order on ties.
template <typename Key>
std::size_t nearest_first(const Norm& norm, const std::vector<double>& y, const std::vector<Key>& keys,
                          const std::vector<std::vector<double>>& sites, double tie) {
  std::vector<double> d(sites.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < sites.size(); ++s) {
    std::vector<double> diff = y;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= sites[s][i];
    d[s] = norm(diff);
    best = std::min(best, d[s]);
  }
  std::size_t pick = sites.size();
  for (std::size_t s = 0; s < sites.size(); ++s) {
    if (d[s] > best + tie) continue;
    if (pick == sites.size()) {
      pick = s;
      continue;
    }
    const double ns = norm(sites[s]), np = norm(sites[pick]);
    if (ns < np || (ns == np && keys[s] < keys[pick])) pick = s;
  }
  return pick;
}

}  // namespace oracle

#endif  // STARLIKE_TESTS_ORACLES_HPP
