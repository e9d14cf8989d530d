// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_PLANAR_TEMPLATE_HPP
#define STARLIKE_PLANAR_TEMPLATE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace starlike {

/// Shape of the planar tiling of the strip {|x| <= 2}.
///
/// Variant A uses the diamond |x|+|y| <= 2 as central region; variant B uses
/// the flattened hexagon |x|+2|y| <= 3, |x| <= 2, which gives a smaller
/// normality constant.
enum class Variant { A, B };

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct TemplateConstants {
  Variant variant = Variant::A;
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;
  double delta = 0.0;
};

enum class Region { U0, U1, U2, U3, U4, Outside };

const char* to_string(Region region) noexcept;
const char* to_string(Variant variant) noexcept;

/// Half-plane alpha*x + beta*y <= gamma.
struct HalfPlane {
  double alpha;
  double beta;
  double gamma;

  double slack(Point2 p) const { return gamma - alpha * p.x - beta * p.y; }
};

/// Defining inequalities of a region (U0..U4) for the given variant.
const std::vector<HalfPlane>& region_inequalities(Variant variant, Region region);

/// Smallest slack over the region's inequalities; >= 0 iff p lies in the region.
double region_slack(Variant variant, Region region, Point2 p);

/// Closed-region membership, fattened by tol (tol < 0 shrinks the region).
bool in_region(Variant variant, Region region, Point2 p, double tol = 0.0);

/// Largest feasible r (strict bounds retreated by the relative margin), then
/// the largest delta for that r. Throws HypothesisViolated or Infeasible.
TemplateConstants make_template(Variant variant, double a, double b,
                                double strict_margin = 1e-12);

/// Checks the hypotheses and variant inequalities; returns the first violated
/// one as a human-readable message.
std::optional<std::string> violated_constraint(const TemplateConstants& c);

/// Region with the lowest index containing p (priority U0 < U1 < ... < U4).
Region classify_planar(Variant variant, Point2 p);
inline Region classify_planar(const TemplateConstants& c, Point2 p) { return classify_planar(c.variant, p); }

struct CornerFailure {
  std::string condition;  // "L.a", "L.b" or "L.c"
  Point2 corner;
  std::string detail;
};

struct TemplateReport {
  bool la = true;
  bool lb = true;
  bool lc = true;
  std::vector<CornerFailure> failures;

  bool ok() const { return la && lb && lc; }
};

/// Corner-exact check of the three square containments. All regions are
/// intersections of half-planes, so a square lies in a region iff its four
/// corners do. Corners may touch boundaries up to `tol`.
TemplateReport verify_template(const TemplateConstants& c, double tol = 1e-12);

}  // namespace starlike

#endif  // STARLIKE_PLANAR_TEMPLATE_HPP
