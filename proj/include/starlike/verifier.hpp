// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_VERIFIER_HPP
#define STARLIKE_VERIFIER_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "starlike/config.hpp"
#include "starlike/cylinder_tiling.hpp"
#include "starlike/projection_mode.hpp"
#include "starlike/voronoi_refinement.hpp"

namespace starlike {

inline constexpr int kReportVersion = 1;

nlohmann::json to_json(const QuotientTileId& id);
nlohmann::json to_json(const CylinderTileId& id);
nlohmann::json to_json(const FullTileId& id);
FullTileId full_tile_from_json(const nlohmann::json& j);

/// Constructed tiling for a config: space, cylinders, Voronoi refinement and,
/// in projection mode, the sliced tiling.
class Tiling {
 public:
  explicit Tiling(const TilingConfig& cfg,
                  std::optional<std::filesystem::path> cache_dir = std::nullopt);
  Tiling(const Tiling&) = delete;
  Tiling& operator=(const Tiling&) = delete;

  const TilingConfig& config() const { return cfg_; }
  /// Sampling parameters do not affect construction and may be replaced.
  void set_sampling(const SamplingSpec& sampling) { cfg_.sampling = sampling; }
  const CylinderTiling& cylinders() const { return *cyl_; }
  const StarlikeTiling& starlike() const { return *starlike_; }
  /// Null unless the config selects projection mode.
  const ProjectionTiling* projection() const { return projection_.get(); }
  /// Constants with the nominal delta.
  DerivedConstants nominal() const;

  /// Mode-aware location, centers and membership.
  FullTileId locate(std::span<const double> x) const;
  Vector center(const FullTileId& id) const;
  bool is_member(std::span<const double> x, const FullTileId& id, double tol) const;

 private:
  TilingConfig cfg_;
  std::unique_ptr<CylinderTiling> cyl_;
  std::unique_ptr<StarlikeTiling> starlike_;
  std::unique_ptr<ProjectionTiling> projection_;
};

struct Witness {
  Vector point;
  std::uint64_t seed = 0;
  std::size_t index = 0;
  nlohmann::json extra = nlohmann::json::object();  // level, tile, ...
  std::string detail;
};

struct CheckRecord {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<Witness> witnesses;  // at most kMaxWitnesses
  std::optional<double> max_ratio;
  std::optional<double> bound;
  nlohmann::json notes = nlohmann::json::object();

  static constexpr std::size_t kMaxWitnesses = 5;
  bool ok() const { return failures == 0; }
};

struct VerificationReport {
  DerivedConstants nominal;
  DerivedConstants effective;
  std::optional<double> k_projection;
  std::vector<CheckRecord> checks;

  std::size_t failures() const;
  const CheckRecord* find(const std::string& name) const;
};

struct SuiteOptions {
  /// Subsets of the suite; all on by default.
  bool template_checks = true;
  bool system_checks = true;
  bool quotient_checks = true;
  bool cylinder_checks = true;
  bool tiling_checks = true;
  bool projection_checks = true;
  /// When set, one JSON line per main sample is appended here.
  std::optional<std::filesystem::path> sample_log;
};

VerificationReport run_suite(const Tiling& tiling, const SuiteOptions& options = {});

nlohmann::json to_json(const VerificationReport& report, const TilingConfig& cfg);
/// Deterministic text of the report (no timestamps).
std::string serialize_report(const VerificationReport& report, const TilingConfig& cfg);

/// Re-evaluates the named check at a witness; true when the failure recurs.
bool replay_witness(const Tiling& tiling, const std::string& check, const Witness& witness);

}  // namespace starlike

#endif  // STARLIKE_VERIFIER_HPP
