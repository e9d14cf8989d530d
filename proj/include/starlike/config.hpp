// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_CONFIG_HPP
#define STARLIKE_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "starlike/normed_space.hpp"
#include "starlike/planar_template.hpp"

namespace starlike {

inline constexpr int kConfigVersion = 1;

struct SpaceSpec {
  std::size_t dim = 2;
  std::string family = "lp";  // "lp" or "polytope"
  double p = 2.0;             // INFINITY for the max norm
  std::vector<Functional> functionals;
};

struct Tolerances {
  double geometric = 1e-6;
  double norm = 1e-8;
  double solver = 1e-8;
  double strict_margin = 1e-3;
};

struct SamplingSpec {
  std::size_t count = 10000;
  double box = 10.0;
  std::uint64_t seed = 7;
  Tolerances tolerances;
  std::size_t workers = 1;
};

enum class Mode { Starlike, Projection };

struct TilingConfig {
  int version = kConfigVersion;
  SpaceSpec space;
  Variant variant = Variant::A;
  double a = 1.3;
  double b = 0.9;
  /// Explicit r and delta override the derived template constants.
  std::optional<double> r;
  std::optional<double> delta;
  double epsilon = 0.2;
  std::uint64_t net_seed = 1;
  Mode mode = Mode::Starlike;
  std::size_t projection_N = 1;
  std::optional<double> projection_side;
  SamplingSpec sampling;
};

/// Throws Error(Config) on schema or consistency violations.
TilingConfig parse_config(const nlohmann::json& j);
TilingConfig parse_config_text(const std::string& text);
TilingConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const TilingConfig& cfg);
std::string serialize_config(const TilingConfig& cfg);

Space make_space(const SpaceSpec& spec);
/// Template constants, honoring explicit r / delta overrides.
TemplateConstants make_constants(const TilingConfig& cfg);

}  // namespace starlike

#endif  // STARLIKE_CONFIG_HPP
