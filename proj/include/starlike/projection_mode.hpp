// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_PROJECTION_MODE_HPP
#define STARLIKE_PROJECTION_MODE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "starlike/derived_constants.hpp"
#include "starlike/normed_space.hpp"
#include "starlike/voronoi_refinement.hpp"

namespace starlike {

struct ProjectionConfig {
  std::size_t N = 1;
  /// ||P_k|| for k = 1..N (index k-1), P_k the coordinate projection onto V_k.
  std::vector<double> P_norms;
  /// False when some ||P_k|| is a sampled lower estimate.
  bool P_norms_exact = true;
  double side = 0.0;
  /// Outer radius of the lattice cells over levels 1..N.
  double t_N = 0.0;
  double R_N = 1.0;
};

/// Norm of the cube [-1,1]^k of V_k: c_in is the distance from the center to
/// the boundary, c_out the largest norm of a point of the cube.
struct CubeRadii {
  double c_in = 1.0;
  double c_out = 1.0;
};

CubeRadii cube_radii(const Space& space, std::size_t k);

/// ||P_k||; exact for l_p and polytope norms, otherwise the best ratio
/// ||P_k x|| / ||x|| over `trials` random x.
double projection_norm(const Space& space, std::size_t k, std::uint64_t seed,
                       std::size_t trials = 100000, bool* exact = nullptr);

ProjectionConfig make_projection_config(const Space& space, std::size_t N, double r,
                                        std::optional<double> side = std::nullopt,
                                        std::uint64_t seed = 1);

struct LatticeCell {
  SiteKey index;
  Vector center;  // in X, zero beyond k
  double inner = 0.0;
  double outer = 0.0;
};

/// Cube of side `side` of V_k containing the first k coordinates of v;
/// half-integer ties go toward -infinity.
LatticeCell lattice_tiling_locate(const Space& space, std::size_t k, double side,
                                  std::span<const double> v);

/// (R_N / r) (R (1 + R_N) + t_N).
double k_projection_bound(const ProjectionConfig& cfg, const DerivedConstants& c, double r);

/// Cylinders of levels 1..N sliced by coordinate cubes; other levels use the
/// Voronoi refinement unchanged.
class ProjectionTiling {
 public:
  ProjectionTiling(const StarlikeTiling& base, ProjectionConfig cfg);

  const ProjectionConfig& config() const { return cfg_; }
  const StarlikeTiling& base() const { return *base_; }
  bool sliced(std::size_t k) const { return k >= 1 && k <= cfg_.N; }

  FullTileId locate(std::span<const double> x) const;
  Vector center(const FullTileId& id) const;
  bool is_member(std::span<const double> x, const FullTileId& id, double tol) const;

  /// Radius of a ball around the center inside every sliced tile of level k.
  double inner_radius(std::size_t k) const;
  /// R (1 + R_N) + t_N.
  double outer_radius() const;

 private:
  const StarlikeTiling* base_;
  ProjectionConfig cfg_;
};

}  // namespace starlike

#endif  // STARLIKE_PROJECTION_MODE_HPP
