/* Copyright 2026 The starlike Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef STARLIKE_C_H
#define STARLIKE_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(STARLIKE_BUILDING_LIBRARY)
#    define STARLIKE_API __declspec(dllexport)
#  else
#    define STARLIKE_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__)
#  define STARLIKE_API __attribute__((visibility("default")))
#else
#  define STARLIKE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct starlike_tiling starlike_tiling;

typedef enum starlike_status {
  STARLIKE_OK = 0,
  STARLIKE_ERR_INVALID_ARGUMENT = 1,
  STARLIKE_ERR_HYPOTHESIS = 2,
  STARLIKE_ERR_INFEASIBLE = 3,
  STARLIKE_ERR_DIMENSION_MISMATCH = 4,
  STARLIKE_ERR_CONFIG = 5,
  STARLIKE_ERR_IO = 6,
  STARLIKE_ERR_BUFFER_TOO_SMALL = 7,
  STARLIKE_ERR_CONSTRUCTION = 8,
  STARLIKE_ERR_INTERNAL = 9
} starlike_status;

typedef struct starlike_constants_t {
  double a;
  double b;
  double r;
  double delta;
  double delta_eff;
  double R;
  double Rprime;
  double Kbound;
} starlike_constants_t;

STARLIKE_API const char* starlike_version(void);
STARLIKE_API const char* starlike_status_string(starlike_status status);
/* Message of the last failing call on this thread; never NULL. */
STARLIKE_API const char* starlike_last_error(void);

/* Template constants for variant 'A' or 'B'. delta_eff <= 0 selects the
 * nominal delta. */
STARLIKE_API starlike_status starlike_constants(char variant, double a, double b, double delta_eff,
                                                starlike_constants_t* out);

/* cache_dir may be NULL (no system cache). */
STARLIKE_API starlike_status starlike_tiling_from_config_file(const char* path, const char* cache_dir,
                                                              starlike_tiling** out);
STARLIKE_API starlike_status starlike_tiling_from_config_json(const char* json, const char* cache_dir,
                                                              starlike_tiling** out);
STARLIKE_API void starlike_tiling_free(starlike_tiling* tiling);
STARLIKE_API size_t starlike_tiling_dim(const starlike_tiling* tiling);

/* Writes a NUL-terminated JSON object {tile, center, distance, ratio} into
 * buf. On STARLIKE_ERR_BUFFER_TOO_SMALL, *needed holds the required size. */
STARLIKE_API starlike_status starlike_locate(const starlike_tiling* tiling, const double* x, size_t n,
                                             char* buf, size_t buflen, size_t* needed);

/* Runs the verification suite. samples == 0 and seed == NULL keep the config
 * values; overrides persist on the handle, so do not run concurrently with
 * other calls on it. log_path may be NULL. *failures receives the failure
 * count. */
STARLIKE_API starlike_status starlike_verify(const starlike_tiling* tiling, size_t samples,
                                             const uint64_t* seed, const char* report_path,
                                             const char* log_path, size_t* failures);

/* SVG slice through the origin in the plane of coordinates axis_x, axis_y
 * (0-based) over [lo, hi]^2. */
STARLIKE_API starlike_status starlike_render_svg(const starlike_tiling* tiling, size_t axis_x, size_t axis_y,
                                                 double lo, double hi, size_t pixels, const char* path);

/* JSON summary of the per-level systems and site sets. */
STARLIKE_API starlike_status starlike_net_info(const starlike_tiling* tiling, char* buf, size_t buflen,
                                               size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* STARLIKE_C_H */
