// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/projection_mode.hpp"

#include <algorithm>
#include <cmath>

#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {

CubeRadii cube_radii(const Space& space, std::size_t k) {
  CubeRadii c;
  if (k == 0) return c;
  if (space.is_lp()) {
    c.c_out = std::isinf(space.p()) ? 1.0 : std::pow(static_cast<double>(k), 1.0 / space.p());
    return c;
  }
  // The basis is normalized with norm-one coordinate functionals, so every
  // facet point is at distance >= 1 and e_i attains it. The norm is convex,
  // so its maximum over the cube sits at a vertex.
  c.c_out = 0.0;
  Vector v(space.dim(), 0.0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    for (std::size_t i = 0; i < k; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    c.c_out = std::max(c.c_out, space.norm(v));
  }
  return c;
}

double projection_norm(const Space& space, std::size_t k, std::uint64_t seed, std::size_t trials,
                       bool* exact) {
  if (exact) *exact = true;
  if (space.is_lp() || k >= space.dim()) return 1.0;
  if (space.is_polytope()) {
    // ||P_k|| = ||P_k^*|| = max over rows f of ||f o P_k||_*.
    double best = 0.0;
    for (const auto& row : space.rows()) {
      Functional f(row.size(), 0.0);
      std::copy_n(row.begin(), k, f.begin());
      best = std::max(best, space.dual_norm(f));
    }
    return best;
  }
  if (exact) *exact = false;
  Rng rng(seed);
  double best = 1.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Vector x(space.dim());
    for (double& xi : x) xi = rng.normal();
    const double n = space.norm(x);
    if (n == 0.0) continue;
    for (std::size_t i = k; i < x.size(); ++i) x[i] = 0.0;
    best = std::max(best, space.norm(x) / n);
  }
  return best;
}

ProjectionConfig make_projection_config(const Space& space, std::size_t N, double r,
                                        std::optional<double> side, std::uint64_t seed) {
  if (N < 1 || N >= space.dim()) {
    throw Error(ErrorCode::InvalidArgument, "projection level N must satisfy 1 <= N < dim");
  }
  ProjectionConfig cfg;
  cfg.N = N;
  cfg.side = side.value_or(2.0 * r);
  if (!(cfg.side > 0.0)) throw Error(ErrorCode::InvalidArgument, "lattice side must be positive");
  cfg.R_N = 1.0;
  cfg.t_N = 0.0;
  for (std::size_t k = 1; k <= N; ++k) {
    bool exact = true;
    const double pk = projection_norm(space, k, derive_seed(seed, k), 100000, &exact);
    cfg.P_norms_exact = cfg.P_norms_exact && exact;
    cfg.P_norms.push_back(pk);
    cfg.R_N = std::max(cfg.R_N, pk);
    cfg.t_N = std::max(cfg.t_N, 0.5 * cfg.side * cube_radii(space, k).c_out);
  }
  return cfg;
}

LatticeCell lattice_tiling_locate(const Space& space, std::size_t k, double side,
                                  std::span<const double> v) {
  if (v.size() != space.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  LatticeCell cell;
  cell.index.resize(k);
  cell.center.assign(space.dim(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    cell.index[i] = static_cast<long>(std::ceil(v[i] / side - 0.5));
    cell.center[i] = side * static_cast<double>(cell.index[i]);
  }
  const CubeRadii radii = cube_radii(space, k);
  cell.inner = 0.5 * side * radii.c_in;
  cell.outer = 0.5 * side * radii.c_out;
  return cell;
}

double k_projection_bound(const ProjectionConfig& cfg, const DerivedConstants& c, double r) {
  return (cfg.R_N / r) * (c.R * (1.0 + cfg.R_N) + cfg.t_N);
}

ProjectionTiling::ProjectionTiling(const StarlikeTiling& base, ProjectionConfig cfg)
    : base_(&base), cfg_(std::move(cfg)) {
  if (cfg_.N < 1 || cfg_.N >= base.cylinders().dim() || cfg_.P_norms.size() != cfg_.N) {
    throw Error(ErrorCode::InvalidArgument, "projection config does not match the space");
  }
}

FullTileId ProjectionTiling::locate(std::span<const double> x) const {
  const CylinderTiling& cyl = base_->cylinders();
  const CylinderTileId c = cyl.locate_cylinder(x);
  if (!sliced(c.k)) return base_->locate_full(x);
  // Axes have zero leading coordinates, so P_k(x - axis) = P_k x.
  const LatticeCell cell = lattice_tiling_locate(cyl.space(), c.k, cfg_.side, x);
  return FullTileId{c, cell.index, true};
}

Vector ProjectionTiling::center(const FullTileId& id) const {
  if (!id.projected) return base_->full_center(id);
  const CylinderTiling& cyl = base_->cylinders();
  if (!sliced(id.cyl.k) || id.site.size() != id.cyl.k) {
    throw Error(ErrorCode::InvalidTile, "projected id outside the sliced levels");
  }
  Vector c = cyl.cylinder_axis(id.cyl).x;
  for (std::size_t i = 0; i < id.cyl.k; ++i) c[i] += cfg_.side * static_cast<double>(id.site[i]);
  return c;
}

bool ProjectionTiling::is_member(std::span<const double> x, const FullTileId& id, double tol) const {
  if (!id.projected) return !sliced(id.cyl.k) && base_->is_member(x, id, tol);
  if (!sliced(id.cyl.k) || id.site.size() != id.cyl.k) return false;
  const CylinderTiling& cyl = base_->cylinders();
  if (x.size() != cyl.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  for (std::size_t i = 0; i < id.cyl.k; ++i) {
    const double d = x[i] - cfg_.side * static_cast<double>(id.site[i]);
    if (std::abs(d) > 0.5 * cfg_.side + tol) return false;
  }
  return cyl.in_cylinder(x, id.cyl, tol);
}

double ProjectionTiling::inner_radius(std::size_t k) const {
  const double r = base_->cylinders().constants().r;
  if (!sliced(k)) return r;
  return std::min(r, 0.5 * cfg_.side) / cfg_.P_norms[k - 1];
}

double ProjectionTiling::outer_radius() const {
  return base_->cylinders().derived().R * (1.0 + cfg_.R_N) + cfg_.t_N;
}

}  // namespace starlike
