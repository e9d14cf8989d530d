// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/quotient_tiling.hpp"

#include <cmath>
#include <sstream>

#include "starlike/error.hpp"

namespace starlike {

namespace {

// Signs of pi(h) for petals p = 1..4, matching U1 and its reflections.
constexpr double kPetalSignX[5] = {0, 1, 1, -1, -1};
constexpr double kPetalSignY[5] = {0, 1, -1, -1, 1};

}  // namespace

std::string to_string(const QuotientTileId& id) {
  std::ostringstream os;
  os << "k=" << id.k << ",";
  switch (id.kind) {
    case QuotientKind::Central: os << "central"; break;
    case QuotientKind::Petal: os << "petal(j=" << id.j << ",p=" << id.p << ")"; break;
    case QuotientKind::Strip: os << "strip(n=" << id.n << ")"; break;
  }
  return os.str();
}

long strip_index(double t) {
  const double a = std::abs(t);
  if (a <= 2.0) return 0;
  const long n = static_cast<long>(std::ceil((a - 2.0) / 4.0));
  return t > 0 ? n : -n;
}

QuotientTiling::QuotientTiling(const Space& space, const TemplateConstants& constants,
                               std::size_t k, const SemiBiorthogonalSystem* upper)
    : space_(&space), c_(constants), k_(k), upper_(upper) {
  if (k >= space.dim()) throw Error(ErrorCode::InvalidArgument, "quotient level must be below M");
  const bool top = k + 1 == space.dim();
  if (top != (upper == nullptr)) {
    throw Error(ErrorCode::InvalidArgument, "a system of level k+1 is required exactly when k < M-1");
  }
  if (upper && upper->level != k + 1) {
    throw Error(ErrorCode::InvalidArgument, "system level must be k+1");
  }
}

Point2 QuotientTiling::pi_map(std::size_t j, std::span<const double> z) const {
  if (!upper_ || j >= upper_->size()) throw Error(ErrorCode::InvalidArgument, "petal index out of range");
  // Both functionals vanish on V_k, so the value is a class function.
  return {z[k_], act(upper_->vstar[j], z)};
}

QuotientTileId QuotientTiling::locate(std::span<const double> z) const {
  const long n = strip_index(z[k_]);
  if (n != 0) return QuotientTileId::strip(k_, n);
  for (std::size_t j = 0; j < petal_count(); ++j) {
    const Region region = classify_planar(c_, pi_map(j, z));
    if (region != Region::U0) return QuotientTileId::petal(k_, j, static_cast<int>(region));
  }
  return QuotientTileId::central(k_);
}

std::optional<std::string> QuotientTiling::invalid_reason(const QuotientTileId& tile) const {
  if (tile.k != k_) return std::string("tile level differs from the tiling level");
  switch (tile.kind) {
    case QuotientKind::Central: return std::nullopt;
    case QuotientKind::Strip:
      if (tile.n == 0) return std::string("strip index must be nonzero");
      return std::nullopt;
    case QuotientKind::Petal:
      if (is_top()) return std::string("the top level has no petal tiles");
      if (tile.j >= petal_count()) return std::string("petal index exceeds the system size");
      if (tile.p < 1 || tile.p > 4) return std::string("petal label must be in 1..4");
      return std::nullopt;
  }
  return std::string("unknown tile kind");
}

QuotientCenter QuotientTiling::center(const QuotientTileId& tile) const {
  if (auto why = invalid_reason(tile)) throw Error(ErrorCode::InvalidTile, *why);
  QuotientCenter out;
  out.tile = tile;
  out.h.assign(space_->dim(), 0.0);
  switch (tile.kind) {
    case QuotientKind::Central:
      break;
    case QuotientKind::Strip:
      out.h[k_] = 4.0 * static_cast<double>(tile.n);
      break;
    case QuotientKind::Petal: {
      // The stored v_{j,k+1} already has zero coordinates 1..k+1, so zeroing
      // the e_{k+1} coefficient is a no-op kept for representatives built elsewhere.
      out.lift = zero_leading(upper_->v[tile.j], k_ + 1);
      const double sx = kPetalSignX[tile.p] * c_.a;
      const double sy = kPetalSignY[tile.p] * c_.b;
      for (std::size_t i = 0; i < out.h.size(); ++i) out.h[i] = sy * out.lift[i];
      out.h[k_] += sx;
      break;
    }
  }
  return out;
}

bool QuotientTiling::contains(std::span<const double> z, const QuotientTileId& tile,
                              double tol) const {
  if (tile.k != k_) return false;
  const double t = z[k_];
  switch (tile.kind) {
    case QuotientKind::Strip:
      return tile.n != 0 && std::abs(t - 4.0 * static_cast<double>(tile.n)) <= 2.0 + tol;
    case QuotientKind::Central:
      if (std::abs(t) > 2.0 + tol) return false;
      for (std::size_t j = 0; j < petal_count(); ++j) {
        if (!in_region(c_.variant, Region::U0, pi_map(j, z), tol)) return false;
      }
      return true;
    case QuotientKind::Petal: {
      if (is_top() || tile.j >= petal_count() || tile.p < 1 || tile.p > 4) return false;
      if (std::abs(t) > 2.0 + tol) return false;
      if (!in_region(c_.variant, static_cast<Region>(tile.p), pi_map(tile.j, z), tol)) return false;
      for (std::size_t j = 0; j < tile.j; ++j) {
        if (!in_region(c_.variant, Region::U0, pi_map(j, z), tol)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace starlike
