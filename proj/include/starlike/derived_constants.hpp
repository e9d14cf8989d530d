// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_DERIVED_CONSTANTS_HPP
#define STARLIKE_DERIVED_CONSTANTS_HPP

#include "starlike/planar_template.hpp"

namespace starlike {

/// Radii of the construction for a template and an effective frame bound.
struct DerivedConstants {
  double delta_eff = 0.0;
  /// Radius bound of the central quotient tile: 4/delta (A) or 3/delta (B).
  double central_radius = 0.0;
  /// Tube radius of the cylinders: a + 2b + 2 * central_radius.
  double R = 0.0;
  /// Outer radius of the final tiles: R + 2r.
  double Rprime = 0.0;
  /// Normality constant bound Rprime / r.
  double Kbound = 0.0;
};

/// R = a + 2b + 8/delta_eff for variant A, a + 2b + 6/delta_eff for B.
DerivedConstants compute_K_bound(const TemplateConstants& c, double delta_eff);

}  // namespace starlike

#endif  // STARLIKE_DERIVED_CONSTANTS_HPP
