// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_VORONOI_REFINEMENT_HPP
#define STARLIKE_VORONOI_REFINEMENT_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starlike/cylinder_tiling.hpp"
#include "starlike/normed_space.hpp"

namespace starlike {

/// Integer coordinates of a site of V_k; the site is unit * key placed in the
/// first k coordinates. Level 0 has the single empty key (the origin).
using SiteKey = std::vector<long>;

/// Absolute tolerance under which two site distances count as a tie.
inline constexpr double kTieTolerance = 1e-9;

/// Maximal 2r-separated set in V_k, restricted to B(0, rho), obtained by a
/// greedy scan of the grid (r/2) Z^k in order of increasing norm, then
/// lexicographically. Keys are in units of r/2; keys[0] is the origin.
struct SeparatedNet {
  std::size_t level = 0;
  double spacing = 0.0;  // 2r
  double rho = 0.0;
  std::vector<SiteKey> keys;
  std::vector<Vector> points;
};

SeparatedNet build_separated_net(const Space& space, std::size_t k, double r, double rho);

enum class SiteLayout {
  Origin,             // k = 0
  CoordinateLattice,  // 2r Z^k: l_inf, and l_p while k <= 2^p
  Checkerboard,       // r D_k (even coordinate sum): l_1 with k <= 4
  GreedyNet,          // explicit grid-greedy net, grown on demand
};

const char* to_string(SiteLayout layout) noexcept;

/// Site set {d_i} of V_k with the first-index order: increasing norm, then
/// lexicographic on the key.
class SiteSet {
 public:
  SiteSet(const Space& space, std::size_t k, double r);
  SiteSet(const SiteSet&) = delete;
  SiteSet& operator=(const SiteSet&) = delete;

  std::size_t level() const { return k_; }
  SiteLayout layout() const { return layout_; }
  /// Key unit: 2r, r or r/2 depending on the layout.
  double unit() const { return unit_; }
  /// Covering radius bound of V_k by the sites.
  double covering_radius() const;

  Vector point(const SiteKey& key) const;
  bool is_site(const SiteKey& key) const;
  /// Strict first-index order.
  bool precedes(const SiteKey& a, const SiteKey& b) const;

  /// First site (in site order) among those attaining min ||y - d_i|| up to
  /// kTieTolerance. y is any vector of X.
  SiteKey locate(std::span<const double> y) const;
  double nearest_distance(std::span<const double> y) const;
  /// A finite set of sites containing the located site and enough competitors
  /// to decide strict membership.
  std::vector<SiteKey> candidates(std::span<const double> y) const;

  /// Snapshot of the explicit net (GreedyNet layout only).
  std::shared_ptr<const SeparatedNet> net() const;

 private:
  struct Scored {
    SiteKey key;
    double distance;
  };
  std::vector<Scored> box_scores(std::span<const double> y) const;
  std::vector<Scored> net_scores(std::span<const double> y) const;
  SiteKey locate_linf(std::span<const double> y, double* distance) const;
  double distance_to(std::span<const double> y, const SiteKey& key) const;

  const Space* space_;
  std::size_t k_;
  double r_;
  SiteLayout layout_;
  double unit_;
  mutable std::mutex grow_mutex_;
  mutable std::shared_ptr<const SeparatedNet> net_;
};

struct FullTileId {
  CylinderTileId cyl;
  SiteKey site;
  /// Set for convex tiles sliced by coordinate projections.
  bool projected = false;

  friend bool operator==(const FullTileId&, const FullTileId&) = default;
};

std::string to_string(const FullTileId& id);

struct StarlikeWitness {
  Vector point;
  double t = 0.0;
};

struct StarlikeReport {
  std::size_t members = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<StarlikeWitness> witnesses;
  bool ok() const { return failures == 0; }
};

/// Tiles C^k_{i,j} = (x^k_j + D^k_i) intersected with C^k_j.
class StarlikeTiling {
 public:
  explicit StarlikeTiling(const CylinderTiling& cylinders);

  const CylinderTiling& cylinders() const { return *cyl_; }
  const SiteSet& sites(std::size_t k) const { return *sites_.at(k); }

  SiteKey locate_cell(std::size_t k, std::span<const double> y) const { return sites(k).locate(y); }
  FullTileId locate_full(std::span<const double> x) const;
  Vector full_center(const FullTileId& id) const;
  /// Tile predicate relaxed by tol; tol < 0 requires every defining
  /// inequality to hold with margin |tol|.
  bool is_member(std::span<const double> x, const FullTileId& id, double tol) const;
  /// Every tile containing x with all defining inequalities strict by margin.
  std::vector<FullTileId> strict_owners(std::span<const double> x, double margin) const;
  StarlikeReport starlike_check(const FullTileId& id, std::size_t samples, std::uint64_t seed) const;

  std::optional<std::string> invalid_reason(const FullTileId& id) const;

 private:
  const CylinderTiling* cyl_;
  std::vector<std::unique_ptr<SiteSet>> sites_;
};

}  // namespace starlike

#endif  // STARLIKE_VORONOI_REFINEMENT_HPP
