// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_CYLINDER_TILING_HPP
#define STARLIKE_CYLINDER_TILING_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starlike/derived_constants.hpp"
#include "starlike/normed_space.hpp"
#include "starlike/planar_template.hpp"
#include "starlike/quotient_tiling.hpp"
#include "starlike/semibeta.hpp"

namespace starlike {

/// Cylinder C^k_j = Q_k^{-1}(H^k_j) intersected with Q_m^{-1}(H^m_0), m > k.
struct CylinderTileId {
  std::size_t k = 0;
  QuotientTileId q;

  friend bool operator==(const CylinderTileId&, const CylinderTileId&) = default;
};

std::string to_string(const CylinderTileId& id);

struct CylinderAxis {
  CylinderTileId id;
  Vector x;  // coordinates 1..k are zero
};

struct ConstructionOptions {
  double epsilon = 0.2;
  std::uint64_t net_seed = 1;
  /// When set, systems are read from / written to this directory.
  std::optional<std::filesystem::path> cache_dir;
};

/// Builds the semi-biorthogonal systems of levels 1..M-1 and the quotient
/// tilings of levels 0..M-1. Immutable after construction.
class CylinderTiling {
 public:
  CylinderTiling(Space space, TemplateConstants constants, ConstructionOptions options);
  CylinderTiling(const CylinderTiling&) = delete;
  CylinderTiling& operator=(const CylinderTiling&) = delete;

  const Space& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  const TemplateConstants& constants() const { return constants_; }
  const ConstructionOptions& options() const { return options_; }
  double delta_eff() const { return constants_.delta - options_.epsilon; }
  /// Radii with delta replaced by delta_eff.
  DerivedConstants derived() const { return compute_K_bound(constants_, delta_eff()); }

  /// System on X/V_level, 1 <= level <= M-1.
  const SemiBiorthogonalSystem& system(std::size_t level) const;
  const QuotientTiling& quotient(std::size_t k) const { return *levels_.at(k); }

  CylinderTileId locate_cylinder(std::span<const double> x) const;
  CylinderAxis cylinder_axis(const CylinderTileId& id) const;
  /// Closed-tile predicate with every inequality relaxed by tol.
  bool in_cylinder(std::span<const double> x, const CylinderTileId& id, double tol) const;

  std::optional<std::string> invalid_reason(const CylinderTileId& id) const;

 private:
  Space space_;
  TemplateConstants constants_;
  ConstructionOptions options_;
  std::vector<std::unique_ptr<SemiBiorthogonalSystem>> systems_;  // index = level
  std::vector<std::unique_ptr<QuotientTiling>> levels_;
};

/// Builds (or loads from the cache) the system of one level.
SemiBiorthogonalSystem build_system(const Space& space, std::size_t level, double delta,
                                    const ConstructionOptions& options);

}  // namespace starlike

#endif  // STARLIKE_CYLINDER_TILING_HPP
