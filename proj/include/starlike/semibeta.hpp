// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_SEMIBETA_HPP
#define STARLIKE_SEMIBETA_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "starlike/normed_space.hpp"

namespace starlike {

/// Finite epsilon-net of the unit sphere of X/V_k. Points are stored with
/// zero leading coordinates, in extraction order.
struct SphereNet {
  std::size_t level = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::vector<Vector> points;
};

/// Unit pairs (v_j, v*_j) on X/V_k with v*_j(v_j) = 1 and
/// |v*_j(v_j')| <= delta for j < j'. The functionals vanish on V_k.
struct SemiBiorthogonalSystem {
  std::size_t level = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  std::vector<Vector> v;
  std::vector<Functional> vstar;
  /// Lower bound on sup_j |v*_j(u)| over unit u; starts at delta - epsilon.
  double certified_bound = 0.0;

  std::size_t size() const { return v.size(); }
  bool empty() const { return v.empty(); }
};

/// Greedy epsilon-separated extraction from a shifted Halton stream of
/// directions, stopping after 10 (3/epsilon)^(M-k) consecutive rejections.
SphereNet sphere_net(const Space& space, std::size_t k, double epsilon, std::uint64_t seed);

/// Scans the net in order and admits each point whose pairings with all
/// previously admitted functionals are at most delta in modulus.
SemiBiorthogonalSystem greedy_system(const Space& space, const SphereNet& net, double delta);

/// Empirical min over `trials` random unit vectors of max_j |v*_j(v)|.
/// Tightens sys.certified_bound to min(empirical, delta - epsilon).
double frame_bound(const Space& space, SemiBiorthogonalSystem& sys, std::size_t trials,
                   std::uint64_t seed);

/// Cache key for a system built from (space, k, delta, epsilon, seed).
std::string system_cache_key(const Space& space, std::size_t k, double delta, double epsilon,
                             std::uint64_t seed);

void save_system(const std::filesystem::path& file, const std::string& key,
                 const SemiBiorthogonalSystem& sys);
/// Empty when the file is missing, unreadable, of another format version or
/// keyed differently.
std::optional<SemiBiorthogonalSystem> load_system(const std::filesystem::path& file,
                                                  const std::string& key);

}  // namespace starlike

#endif  // STARLIKE_SEMIBETA_HPP
