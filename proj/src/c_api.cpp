// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/starlike_c.h"

#include <cstring>
#include <fstream>
#include <string>

#include "starlike/config.hpp"
#include "starlike/error.hpp"
#include "starlike/render.hpp"
#include "starlike/verifier.hpp"

struct starlike_tiling {
  std::unique_ptr<starlike::Tiling> impl;
};

namespace {

thread_local std::string last_error;

starlike_status status_of(starlike::ErrorCode code) {
  using starlike::ErrorCode;
  switch (code) {
    case ErrorCode::HypothesisViolated: return STARLIKE_ERR_HYPOTHESIS;
    case ErrorCode::Infeasible: return STARLIKE_ERR_INFEASIBLE;
    case ErrorCode::DimensionMismatch: return STARLIKE_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Config: return STARLIKE_ERR_CONFIG;
    case ErrorCode::Io: return STARLIKE_ERR_IO;
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidTile: return STARLIKE_ERR_INVALID_ARGUMENT;
    default: return STARLIKE_ERR_CONSTRUCTION;
  }
}

template <typename F>
starlike_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const starlike::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return STARLIKE_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return STARLIKE_ERR_INTERNAL;
  }
}

starlike_status fail(starlike_status s, const char* msg) {
  last_error = msg;
  return s;
}

starlike_status copy_out(const std::string& text, char* buf, size_t buflen, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf || buflen < text.size() + 1) return fail(STARLIKE_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return STARLIKE_OK;
}

// Writes through a temporary file so readers never see a partial file.
void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw starlike::Error(starlike::ErrorCode::Io, "cannot write " + path);
    out << text;
    if (!out.flush()) throw starlike::Error(starlike::ErrorCode::Io, "cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw starlike::Error(starlike::ErrorCode::Io, "cannot write " + path);
  }
}

std::optional<std::filesystem::path> cache_path(const char* dir) {
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir);
}

starlike_status make_tiling(const starlike::TilingConfig& cfg, const char* cache_dir, starlike_tiling** out) {
  if (cache_dir && *cache_dir) std::filesystem::create_directories(cache_dir);
  auto handle = std::make_unique<starlike_tiling>();
  handle->impl = std::make_unique<starlike::Tiling>(cfg, cache_path(cache_dir));
  *out = handle.release();
  return STARLIKE_OK;
}

}  // namespace

extern "C" {

const char* starlike_version(void) { return "0.1.0"; }

const char* starlike_status_string(starlike_status status) {
  switch (status) {
    case STARLIKE_OK: return "ok";
    case STARLIKE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case STARLIKE_ERR_HYPOTHESIS: return "hypothesis violated";
    case STARLIKE_ERR_INFEASIBLE: return "infeasible";
    case STARLIKE_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case STARLIKE_ERR_CONFIG: return "invalid config";
    case STARLIKE_ERR_IO: return "i/o failure";
    case STARLIKE_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case STARLIKE_ERR_CONSTRUCTION: return "construction failed";
    case STARLIKE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* starlike_last_error(void) { return last_error.c_str(); }

starlike_status starlike_constants(char variant, double a, double b, double delta_eff, starlike_constants_t* out) {
  return guarded([&] {
    if (!out) return fail(STARLIKE_ERR_INVALID_ARGUMENT, "out is NULL");
    if (variant != 'A' && variant != 'B') return fail(STARLIKE_ERR_INVALID_ARGUMENT, "variant must be 'A' or 'B'");
    const auto c = starlike::make_template(variant == 'A' ? starlike::Variant::A : starlike::Variant::B, a, b);
    const auto d = starlike::compute_K_bound(c, delta_eff > 0.0 ? delta_eff : c.delta);
    *out = {c.a, c.b, c.r, c.delta, d.delta_eff, d.R, d.Rprime, d.Kbound};
    return STARLIKE_OK;
  });
}

starlike_status starlike_tiling_from_config_file(const char* path, const char* cache_dir, starlike_tiling** out) {
  return guarded([&] {
    if (!path || !out) return fail(STARLIKE_ERR_INVALID_ARGUMENT, "path and out must be non-NULL");
    *out = nullptr;
    return make_tiling(starlike::load_config(path), cache_dir, out);
  });
}

starlike_status starlike_tiling_from_config_json(const char* json, const char* cache_dir, starlike_tiling** out) {
  return guarded([&] {
    if (!json || !out) return fail(STARLIKE_ERR_INVALID_ARGUMENT, "json and out must be non-NULL");
    *out = nullptr;
    return make_tiling(starlike::parse_config_text(json), cache_dir, out);
  });
}

void starlike_tiling_free(starlike_tiling* tiling) { delete tiling; }

size_t starlike_tiling_dim(const starlike_tiling* tiling) {
  return tiling ? tiling->impl->cylinders().dim() : 0;
}

starlike_status starlike_locate(const starlike_tiling* tiling, const double* x, size_t n, char* buf, size_t buflen,
                                size_t* needed) {
  return guarded([&] {
    if (!tiling || (!x && n)) return fail(STARLIKE_ERR_INVALID_ARGUMENT, "tiling and x must be non-NULL");
    const starlike::Tiling& t = *tiling->impl;
    if (n != t.cylinders().dim()) {
      return fail(STARLIKE_ERR_DIMENSION_MISMATCH, "point dimension differs from the space");
    }
    const std::vector<double> p(x, x + n);
    const starlike::FullTileId id = t.locate(p);
    const starlike::Vector c = t.center(id);
    std::vector<double> diff(n);
    for (size_t i = 0; i < n; ++i) diff[i] = p[i] - c[i];
    const double d = t.cylinders().space().norm(diff);
    const nlohmann::json j = {{"tile", starlike::to_json(id)},
                              {"center", c},
                              {"distance", d},
                              {"ratio", d / t.cylinders().constants().r}};
    return copy_out(j.dump(), buf, buflen, needed);
  });
}

starlike_status starlike_verify(const starlike_tiling* tiling, size_t samples, const uint64_t* seed,
                                const char* report_path, const char* log_path, size_t* failures) {
  return guarded([&] {
    if (!tiling || !report_path) return fail(STARLIKE_ERR_INVALID_ARGUMENT, "tiling and report_path must be non-NULL");
    starlike::Tiling& t = *tiling->impl;
    starlike::SamplingSpec sampling = t.config().sampling;
    if (samples) sampling.count = samples;
    if (seed) sampling.seed = *seed;
    t.set_sampling(sampling);
    starlike::SuiteOptions opt;
    if (log_path && *log_path) opt.sample_log = log_path;
    const starlike::VerificationReport rep = starlike::run_suite(t, opt);
    write_file(report_path, starlike::serialize_report(rep, t.config()));
    if (failures) *failures = rep.failures();
    return STARLIKE_OK;
  });
}

starlike_status starlike_render_svg(const starlike_tiling* tiling, size_t axis_x, size_t axis_y, double lo, double hi,
                                    size_t pixels, const char* path) {
  return guarded([&] {
    if (!tiling || !path) return fail(STARLIKE_ERR_INVALID_ARGUMENT, "tiling and path must be non-NULL");
    const starlike::SliceSpec spec{axis_x, axis_y, lo, hi, pixels};
    write_file(path, starlike::render_svg(*tiling->impl, spec));
    return STARLIKE_OK;
  });
}

starlike_status starlike_net_info(const starlike_tiling* tiling, char* buf, size_t buflen, size_t* needed) {
  return guarded([&] {
    if (!tiling) return fail(STARLIKE_ERR_INVALID_ARGUMENT, "tiling is NULL");
    const starlike::Tiling& t = *tiling->impl;
    const starlike::CylinderTiling& cyl = t.cylinders();
    nlohmann::json levels = nlohmann::json::array();
    for (size_t k = 0; k < cyl.dim(); ++k) {
      const starlike::SiteSet& sites = t.starlike().sites(k);
      nlohmann::json lvl = {{"level", k},
                            {"sites", starlike::to_string(sites.layout())},
                            {"site_unit", sites.unit()},
                            {"covering_radius", sites.covering_radius()}};
      if (k + 1 < cyl.dim()) {
        const auto& sys = cyl.system(k + 1);
        lvl["system_size"] = sys.size();
        lvl["certified_bound"] = sys.certified_bound;
      }
      levels.push_back(std::move(lvl));
    }
    const auto d = cyl.derived();
    const nlohmann::json j = {{"space", cyl.space().describe()},
                              {"r", cyl.constants().r},
                              {"delta", cyl.constants().delta},
                              {"epsilon", cyl.options().epsilon},
                              {"delta_eff", d.delta_eff},
                              {"levels", levels}};
    return copy_out(j.dump(), buf, buflen, needed);
  });
}

}  // extern "C"
