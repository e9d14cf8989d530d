// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_QUOTIENT_TILING_HPP
#define STARLIKE_QUOTIENT_TILING_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "starlike/normed_space.hpp"
#include "starlike/planar_template.hpp"
#include "starlike/semibeta.hpp"

namespace starlike {

enum class QuotientKind { Central, Petal, Strip };

/// Tile of X/V_k: the central tile, a petal (j, p) or the strip translate n.
struct QuotientTileId {
  std::size_t k = 0;
  QuotientKind kind = QuotientKind::Central;
  std::size_t j = 0;  // petal only
  int p = 0;          // petal only, 1..4
  long n = 0;         // strip only, nonzero

  static QuotientTileId central(std::size_t k) { return {k, QuotientKind::Central, 0, 0, 0}; }
  static QuotientTileId petal(std::size_t k, std::size_t j, int p) {
    return {k, QuotientKind::Petal, j, p, 0};
  }
  static QuotientTileId strip(std::size_t k, long n) { return {k, QuotientKind::Strip, 0, 0, n}; }

  friend bool operator==(const QuotientTileId&, const QuotientTileId&) = default;
};

std::string to_string(const QuotientTileId& id);

struct QuotientCenter {
  QuotientTileId tile;
  Vector h;     // zero leading coordinates
  Vector lift;  // petals: u_j with Q_{k,k+1}(u_j) = v_{j,k+1}, e*_{k+1}(u_j) = 0
};

/// Strip index for the value of e*_{k+1}: |t - 4n| <= 2, ties resolved toward
/// the smallest |n|, then the positive sign.
long strip_index(double t);

/// The tiling {H^k_j} of X/V_k. For k < M-1 it scans the system of level k+1;
/// the top level k = M-1 is the interval tiling of a line.
class QuotientTiling {
 public:
  /// `upper` is the system on X/V_{k+1}; it must be null exactly when k = M-1.
  QuotientTiling(const Space& space, const TemplateConstants& constants, std::size_t k,
                 const SemiBiorthogonalSystem* upper);

  std::size_t level() const { return k_; }
  bool is_top() const { return upper_ == nullptr; }
  /// Number of pairs in the scanned system (m_{k+1} + 1); 0 at the top level.
  std::size_t petal_count() const { return upper_ ? upper_->size() : 0; }

  /// (e*_{k+1}(z), v*_{j,k+1}(Q_{k,k+1} z)); independent of the representative.
  Point2 pi_map(std::size_t j, std::span<const double> z) const;

  QuotientTileId locate(std::span<const double> z) const;

  QuotientCenter center(const QuotientTileId& tile) const;

  /// Closed-tile predicate; every defining inequality is relaxed by tol
  /// (tol < 0 demands strict interiority by |tol|).
  bool contains(std::span<const double> z, const QuotientTileId& tile, double tol) const;

  /// Validates the id against this level; returns an error message if invalid.
  std::optional<std::string> invalid_reason(const QuotientTileId& tile) const;

 private:
  const Space* space_;
  TemplateConstants c_;
  std::size_t k_;
  const SemiBiorthogonalSystem* upper_;
};

}  // namespace starlike

#endif  // STARLIKE_QUOTIENT_TILING_HPP
