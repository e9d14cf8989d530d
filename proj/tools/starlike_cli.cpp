// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starlike/starlike_c.h"

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kInfeasible = 2, kDimension = 3, kWrite = 4 };

constexpr const char* kCacheEnv = "STARLIKE_CACHE_DIR";

int exit_code(starlike_status s) {
  switch (s) {
    case STARLIKE_OK: return kOk;
    case STARLIKE_ERR_HYPOTHESIS:
    case STARLIKE_ERR_INFEASIBLE:
    case STARLIKE_ERR_CONFIG:
    case STARLIKE_ERR_INVALID_ARGUMENT: return kInfeasible;
    case STARLIKE_ERR_DIMENSION_MISMATCH: return kDimension;
    case STARLIKE_ERR_IO: return kWrite;
    default: return kChecksFailed;
  }
}

int report(starlike_status s) {
  if (s != STARLIKE_OK) std::fprintf(stderr, "error: %s: %s\n", starlike_status_string(s), starlike_last_error());
  return exit_code(s);
}

std::string cache_dir(bool disabled) {
  if (disabled) return {};
  if (const char* env = std::getenv(kCacheEnv); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::string(xdg) + "/starlike";
  if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/starlike";
  return {};
}

struct Loaded {
  starlike_tiling* tiling = nullptr;
  ~Loaded() { starlike_tiling_free(tiling); }
};

starlike_status load(const std::string& config, bool no_cache, Loaded& out) {
  const std::string dir = cache_dir(no_cache);
  return starlike_tiling_from_config_file(config.c_str(), dir.empty() ? nullptr : dir.c_str(), &out.tiling);
}

std::string json_call(const starlike_tiling* t, starlike_status (*fn)(const starlike_tiling*, char*, size_t, size_t*),
                      starlike_status& s) {
  size_t needed = 0;
  s = fn(t, nullptr, 0, &needed);
  if (s != STARLIKE_ERR_BUFFER_TOO_SMALL) return {};
  std::string buf(needed, '\0');
  s = fn(t, buf.data(), buf.size(), &needed);
  buf.resize(needed ? needed - 1 : 0);
  return buf;
}

// "a:b" pairs for --plane and --bbox.
template <typename T>
bool split_pair(const std::string& text, T& first, T& second) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) return false;
  try {
    if constexpr (std::is_integral_v<T>) {
      first = static_cast<T>(std::stoul(text.substr(0, colon)));
      second = static_cast<T>(std::stoul(text.substr(colon + 1)));
    } else {
      first = std::stod(text.substr(0, colon));
      second = std::stod(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal starlike tilings of finite-dimensional normed spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", starlike_version());
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, std::string("Do not read or write the system cache (default location is $") +
                                           kCacheEnv + ", else the user cache directory)");

  auto* constants = app.add_subcommand("constants", "Print template and normality constants");
  std::string variant = "A";
  double a = 1.3, b = 0.9;
  std::optional<double> epsilon;
  constants->add_option("--variant", variant, "Template variant")->check(CLI::IsMember({"A", "B"}))->capture_default_str();
  constants->add_option("--a", a, "Template parameter a, 1 < a < 2")->capture_default_str();
  constants->add_option("--b", b, "Template parameter b, 0 < b < 1")->capture_default_str();
  constants->add_option("--epsilon", epsilon, "Net spacing; also prints constants for delta - epsilon");

  std::string config;
  auto* locate = app.add_subcommand("locate", "Locate a point and print its tile");
  std::vector<double> point;
  locate->add_option("--config", config, "Tiling config file")->required()->check(CLI::ExistingFile);
  locate->add_option("--point", point, "Point coordinates, comma separated")->required()->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Run the verification suite and write a report");
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::string out = "report.json", log;
  verify->add_option("--config", config, "Tiling config file")->required()->check(CLI::ExistingFile);
  verify->add_option("--samples", samples, "Box samples (default: config value)");
  verify->add_option("--seed", seed, "Sampling seed (default: config value)");
  verify->add_option("--out", out, "Report file")->capture_default_str();
  verify->add_option("--log", log, "Per-sample log (JSON lines)");


  auto* render = app.add_subcommand("render", "Write an SVG slice of the tiling");
  std::string plane = "1:2", bbox = "-6:6", svg = "slice.svg";
  std::size_t pixels = 200;
  render->add_option("--config", config, "Tiling config file")->required()->check(CLI::ExistingFile);
  render->add_option("--plane", plane, "Coordinate plane i:j, 1-based")->capture_default_str();
  render->add_option("--bbox", bbox, "Coordinate range lo:hi")->capture_default_str();
  render->add_option("--pixels", pixels, "Pixels per side")->capture_default_str()->check(CLI::PositiveNumber);
  render->add_option("--out", svg, "Output SVG file")->capture_default_str();

  auto* net = app.add_subcommand("net", "Build (or load) the per-level systems and print a summary");
  net->add_option("--config", config, "Tiling config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInfeasible;
  }

  if (*constants) {
    starlike_constants_t c{};
    const starlike_status s = starlike_constants(variant[0], a, b, 0.0, &c);
    if (s != STARLIKE_OK) return report(s);
    std::printf("variant %s\na %.15g\nb %.15g\nr %.15g\ndelta %.15g\nR %.15g\nR' %.15g\nK bound %.15g\n",
                variant.c_str(), c.a, c.b, c.r, c.delta, c.R, c.Rprime, c.Kbound);
    if (epsilon) {
      if (!(*epsilon > 0.0 && *epsilon < c.delta)) {
        std::fprintf(stderr, "error: epsilon must lie in (0, delta)\n");
        return kInfeasible;
      }
      starlike_constants_t e{};
      const starlike_status se = starlike_constants(variant[0], a, b, c.delta - *epsilon, &e);
      if (se != STARLIKE_OK) return report(se);
      std::printf("delta_eff %.15g\nR_eff %.15g\nR'_eff %.15g\nK bound_eff %.15g\n", e.delta_eff, e.R, e.Rprime,
                  e.Kbound);
    }
    return kOk;
  }

  Loaded loaded;
  if (starlike_status s = load(config, no_cache, loaded); s != STARLIKE_OK) return report(s);

  if (*locate) {
    size_t needed = 0;
    starlike_status s = starlike_locate(loaded.tiling, point.data(), point.size(), nullptr, 0, &needed);
    if (s != STARLIKE_ERR_BUFFER_TOO_SMALL) return report(s);
    std::string buf(needed, '\0');
    s = starlike_locate(loaded.tiling, point.data(), point.size(), buf.data(), buf.size(), &needed);
    if (s != STARLIKE_OK) return report(s);
    std::printf("%s\n", buf.c_str());
    return kOk;
  }
  if (*verify) {
    size_t failures = 0;
    const std::uint64_t seed_value = seed.value_or(0);
    const starlike_status s = starlike_verify(loaded.tiling, samples, seed ? &seed_value : nullptr, out.c_str(),
                                              log.empty() ? nullptr : log.c_str(), &failures);
    if (s != STARLIKE_OK) return report(s);
    std::printf("%zu failures; report written to %s\n", failures, out.c_str());
    return failures == 0 ? kOk : kChecksFailed;
  }
  if (*render) {
    std::size_t i = 0, j = 0;
    double lo = 0.0, hi = 0.0;
    if (!split_pair(plane, i, j) || i == 0 || j == 0) {
      std::fprintf(stderr, "error: --plane expects i:j with 1-based indices\n");
      return kInfeasible;
    }
    if (!split_pair(bbox, lo, hi)) {
      std::fprintf(stderr, "error: --bbox expects lo:hi\n");
      return kInfeasible;
    }
    const size_t dim = starlike_tiling_dim(loaded.tiling);
    if (i > dim || j > dim) {
      std::fprintf(stderr, "error: plane %zu:%zu exceeds dimension %zu\n", i, j, dim);
      return kDimension;
    }
    return report(starlike_render_svg(loaded.tiling, i - 1, j - 1, lo, hi, pixels, svg.c_str()));
  }
  if (*net) {
    starlike_status s;
    const std::string info = json_call(loaded.tiling, starlike_net_info, s);
    if (s != STARLIKE_OK) return report(s);
    std::printf("%s\n", info.c_str());
    return kOk;
  }
  return kOk;
}
