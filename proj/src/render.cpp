// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/render.hpp"

#include <cstdio>
#include <sstream>

#include "starlike/error.hpp"

namespace starlike {

std::uint32_t tile_color(const FullTileId& id) {
  const std::string key = to_string(id);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) h = (h ^ c) * 0x100000001b3ULL;
  h ^= h >> 29;
  // Keep channels away from black so boundaries stay readable.
  const auto channel = [&](int shift) { return 64u + static_cast<std::uint32_t>((h >> shift) & 0xff) * 3u / 4u; };
  return (channel(0) << 16) | (channel(16) << 8) | channel(32);
}

std::string render_svg(const Tiling& tiling, const SliceSpec& spec) {
  const std::size_t M = tiling.cylinders().dim();
  if (spec.axis_x >= M || spec.axis_y >= M) throw Error(ErrorCode::DimensionMismatch, "plane axis exceeds dimension");
  if (spec.axis_x == spec.axis_y) throw Error(ErrorCode::InvalidArgument, "plane axes must differ");
  if (!(spec.hi > spec.lo) || spec.pixels == 0) throw Error(ErrorCode::InvalidArgument, "empty render box");
  const std::size_t n = spec.pixels;
  const double cell = (spec.hi - spec.lo) / static_cast<double>(n);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << n << "\" height=\"" << n
     << "\" viewBox=\"0 0 " << n << ' ' << n << "\" shape-rendering=\"crispEdges\">\n";
  Vector x(M, 0.0);
  char color[8];
  for (std::size_t row = 0; row < n; ++row) {
    // Row 0 is the top edge, so y decreases downward.
    x[spec.axis_y] = spec.hi - (static_cast<double>(row) + 0.5) * cell;
    std::size_t start = 0;
    FullTileId current;
    for (std::size_t col = 0; col <= n; ++col) {
      FullTileId id;
      if (col < n) {
        x[spec.axis_x] = spec.lo + (static_cast<double>(col) + 0.5) * cell;
        id = tiling.locate(x);
        if (col > 0 && id == current) continue;
      }
      if (col > 0) {
        std::snprintf(color, sizeof color, "#%06x", tile_color(current));
        os << "<rect x=\"" << start << "\" y=\"" << row << "\" width=\"" << col - start
           << "\" height=\"1\" fill=\"" << color << "\"/>\n";
      }
      start = col;
      current = id;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace starlike
