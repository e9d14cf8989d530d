// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_RENDER_HPP
#define STARLIKE_RENDER_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "starlike/verifier.hpp"

namespace starlike {

struct SliceSpec {
  std::size_t axis_x = 0;  // 0-based coordinate indices, distinct
  std::size_t axis_y = 1;
  double lo = -6.0;
  double hi = 6.0;
  std::size_t pixels = 200;
};

/// Stable color for a tile id, as 0xRRGGBB.
std::uint32_t tile_color(const FullTileId& id);

/// SVG of the slice through the origin spanned by the two axes, one rect per
/// horizontal run of pixels sharing a tile.
std::string render_svg(const Tiling& tiling, const SliceSpec& spec);

}  // namespace starlike

#endif  // STARLIKE_RENDER_HPP
