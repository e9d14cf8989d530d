// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/cylinder_tiling.hpp"

#include <cstdio>

#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {

DerivedConstants compute_K_bound(const TemplateConstants& c, double delta_eff) {
  DerivedConstants d;
  d.delta_eff = delta_eff;
  d.central_radius = (c.variant == Variant::A ? 4.0 : 3.0) / delta_eff;
  d.R = c.a + 2.0 * c.b + 2.0 * d.central_radius;
  d.Rprime = d.R + 2.0 * c.r;
  d.Kbound = d.Rprime / c.r;
  return d;
}

std::string to_string(const CylinderTileId& id) { return to_string(id.q); }

namespace {

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

SemiBiorthogonalSystem build_system(const Space& space, std::size_t level, double delta,
                                    const ConstructionOptions& options) {
  const std::uint64_t seed = derive_seed(options.net_seed, level);
  const std::string key = system_cache_key(space, level, delta, options.epsilon, seed);
  std::filesystem::path file;
  if (options.cache_dir) {
    file = *options.cache_dir / ("system-" + fnv_hex(key) + ".json");
    if (auto cached = load_system(file, key)) return *cached;
  }
  const SphereNet net = sphere_net(space, level, options.epsilon, seed);
  SemiBiorthogonalSystem sys = greedy_system(space, net, delta);
  if (options.cache_dir) save_system(file, key, sys);
  return sys;
}

CylinderTiling::CylinderTiling(Space space, TemplateConstants constants, ConstructionOptions options)
    : space_(std::move(space)), constants_(constants), options_(std::move(options)) {
  if (!(options_.epsilon > 0.0 && options_.epsilon < constants_.delta)) {
    throw Error(ErrorCode::InvalidArgument, "net epsilon must lie in (0, delta)");
  }
  const std::size_t m = space_.dim();
  systems_.resize(m);
  for (std::size_t level = 1; level < m; ++level) {
    systems_[level] = std::make_unique<SemiBiorthogonalSystem>(
        build_system(space_, level, constants_.delta, options_));
  }
  levels_.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const SemiBiorthogonalSystem* upper = k + 1 < m ? systems_[k + 1].get() : nullptr;
    levels_.push_back(std::make_unique<QuotientTiling>(space_, constants_, k, upper));
  }
}

const SemiBiorthogonalSystem& CylinderTiling::system(std::size_t level) const {
  if (level == 0 || level >= systems_.size() || !systems_[level]) {
    throw Error(ErrorCode::InvalidArgument, "systems exist for levels 1..M-1 only");
  }
  return *systems_[level];
}

CylinderTileId CylinderTiling::locate_cylinder(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from the space");
  std::size_t k = dim() - 1;
  while (k > 0 && levels_[k]->locate(x).kind == QuotientKind::Central) --k;
  return {k, levels_[k]->locate(x)};
}

std::optional<std::string> CylinderTiling::invalid_reason(const CylinderTileId& id) const {
  if (id.k >= dim()) return std::string("cylinder level must be below M");
  if (id.q.k != id.k) return std::string("quotient tile level differs from cylinder level");
  if (id.k > 0 && id.q.kind == QuotientKind::Central) {
    return std::string("cylinders above level 0 cannot use the central quotient tile");
  }
  return levels_[id.k]->invalid_reason(id.q);
}

CylinderAxis CylinderTiling::cylinder_axis(const CylinderTileId& id) const {
  if (auto why = invalid_reason(id)) throw Error(ErrorCode::InvalidTile, *why);
  return {id, zero_leading(levels_[id.k]->center(id.q).h, id.k)};
}

bool CylinderTiling::in_cylinder(std::span<const double> x, const CylinderTileId& id,
                                 double tol) const {
  if (invalid_reason(id)) return false;
  if (!levels_[id.k]->contains(x, id.q, tol)) return false;
  for (std::size_t m = id.k + 1; m < dim(); ++m) {
    if (!levels_[m]->contains(x, QuotientTileId::central(m), tol)) return false;
  }
  return true;
}

}  // namespace starlike
