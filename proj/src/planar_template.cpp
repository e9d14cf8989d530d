// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/planar_template.hpp"

#include <algorithm>
#include <cmath>

#include "starlike/error.hpp"

namespace starlike {

namespace {

// U1 for each variant; U2..U4 are its reflections (x,y) -> (x,-y), -(x,y), (-x,y).
std::vector<HalfPlane> side_region(Variant v) {
  if (v == Variant::A) {
    return {{-1, 0, 0}, {1, 0, 2}, {0, -1, 0}, {-1, -1, -2}};
  }
  return {{-1, 0, 0}, {1, 0, 2}, {0, -1, 0}, {-1, -2, -3}};
}

std::vector<HalfPlane> reflect(const std::vector<HalfPlane>& hs, double sx, double sy) {
  std::vector<HalfPlane> out;
  out.reserve(hs.size());
  for (const auto& h : hs) out.push_back({h.alpha * sx, h.beta * sy, h.gamma});
  return out;
}

struct RegionTable {
  std::array<std::vector<HalfPlane>, 5> regions;
};

RegionTable build_table(Variant v) {
  RegionTable t;
  if (v == Variant::A) {
    t.regions[0] = {{1, 1, 2}, {1, -1, 2}, {-1, 1, 2}, {-1, -1, 2}};
  } else {
    t.regions[0] = {{1, 2, 3}, {1, -2, 3}, {-1, 2, 3}, {-1, -2, 3}, {1, 0, 2}, {-1, 0, 2}};
  }
  const auto u1 = side_region(v);
  t.regions[1] = u1;
  t.regions[2] = reflect(u1, 1, -1);
  t.regions[3] = reflect(u1, -1, -1);
  t.regions[4] = reflect(u1, -1, 1);
  return t;
}

const RegionTable& table(Variant v) {
  static const RegionTable a = build_table(Variant::A);
  static const RegionTable b = build_table(Variant::B);
  return v == Variant::A ? a : b;
}

void check_hypotheses(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::HypothesisViolated, "a and b must be finite");
  }
  if (!(a > 1.0 && a < 2.0)) {
    throw Error(ErrorCode::HypothesisViolated, "hypothesis 1<a<2 violated");
  }
  if (!(b > 0.0 && b < 1.0)) {
    throw Error(ErrorCode::HypothesisViolated, "hypothesis 0<b<1 violated");
  }
  if (!(a + b > 2.0)) {
    throw Error(ErrorCode::HypothesisViolated, "hypothesis a+b>2 violated");
  }
}

}  // namespace

const char* to_string(Region region) noexcept {
  switch (region) {
    case Region::U0: return "U0";
    case Region::U1: return "U1";
    case Region::U2: return "U2";
    case Region::U3: return "U3";
    case Region::U4: return "U4";
    case Region::Outside: return "Outside";
  }
  return "?";
}

const char* to_string(Variant variant) noexcept {
  return variant == Variant::A ? "A" : "B";
}

const std::vector<HalfPlane>& region_inequalities(Variant variant, Region region) {
  if (region == Region::Outside) {
    throw Error(ErrorCode::InvalidArgument, "Outside has no defining inequalities");
  }
  return table(variant).regions[static_cast<int>(region)];
}

double region_slack(Variant variant, Region region, Point2 p) {
  double s = INFINITY;
  for (const auto& h : region_inequalities(variant, region)) s = std::min(s, h.slack(p));
  return s;
}

bool in_region(Variant variant, Region region, Point2 p, double tol) {
  return region_slack(variant, region, p) >= -tol;
}

TemplateConstants make_template(Variant variant, double a, double b, double strict_margin) {
  check_hypotheses(a, b);
  TemplateConstants c{variant, a, b, 0.0, 0.0};
  if (variant == Variant::A) {
    const double r_closed = std::min({1.0 - b, (a + b) / 2.0 - 1.0, 2.0 - a});
    const double r_open = (1.0 - a / 2.0) * (1.0 - strict_margin);
    c.r = std::min(r_closed, r_open);
    if (!(c.r > 0.0)) throw Error(ErrorCode::Infeasible, "no positive r satisfies the variant A bounds");
    c.delta = (2.0 - 2.0 * c.r - a) / b;
  } else {
    c.r = std::min({1.0 - b, 2.0 - a, (a + 2.0 * b - 3.0) / 3.0, a, b});
    if (!(c.r > 0.0)) {
      throw Error(ErrorCode::Infeasible, "no positive r satisfies a-r+2(b-r)>=3 and b+r<=1, a+r<=2");
    }
    c.delta = (3.0 - a - 3.0 * c.r) / (2.0 * b);
  }
  if (!(c.delta > 0.0)) throw Error(ErrorCode::Infeasible, "no positive delta for the chosen r");
  if (c.delta >= 1.0) c.delta = 1.0 - strict_margin;
  return c;
}

std::optional<std::string> violated_constraint(const TemplateConstants& c) {
  try {
    check_hypotheses(c.a, c.b);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  const double a = c.a, b = c.b, r = c.r, d = c.delta;
  const double eps = 1e-12;
  if (!(r > 0 && r < 1)) return std::string("0<r<1 violated");
  if (!(d > 0 && d < 1)) return std::string("0<delta<1 violated");
  if (c.variant == Variant::A) {
    if (r > 1 - b + eps) return std::string("r<=1-b violated");
    if (r > (a + b) / 2 - 1 + eps) return std::string("r<=(a+b)/2-1 violated");
    if (r > 2 - a + eps) return std::string("r<=2-a violated");
    if (!(r < 1 - a / 2)) return std::string("r<1-a/2 violated");
    if (d > (2 - 2 * r - a) / b + eps) return std::string("delta<=(2-2r-a)/b violated");
  } else {
    if (a + 3 * r + 2 * d * b > 3 + eps) return std::string("a+3r+2*delta*b<=3 violated");
    if (b + r > 1 + eps) return std::string("b+r<=1 violated");
    if (a + r > 2 + eps) return std::string("a+r<=2 violated");
    if (a - r + 2 * (b - r) < 3 - eps) return std::string("a-r+2(b-r)>=3 violated");
    if (a - r < -eps) return std::string("a-r>=0 violated");
    if (b - r < -eps) return std::string("b-r>=0 violated");
  }
  return std::nullopt;
}

Region classify_planar(Variant variant, Point2 p) {
  for (int i = 0; i < 5; ++i) {
    const auto region = static_cast<Region>(i);
    if (region_slack(variant, region, p) >= 0.0) return region;
  }
  return Region::Outside;
}

TemplateReport verify_template(const TemplateConstants& c, double tol) {
  TemplateReport report;
  const auto check = [&](const char* name, bool& flag, Point2 corner, Region region,
                         bool unit_height) {
    const double s = region_slack(c.variant, region, corner);
    if (s < -tol) {
      flag = false;
      report.failures.push_back({name, corner, std::string("corner outside ") + to_string(region)});
    } else if (unit_height && std::abs(corner.y) > 1.0 + tol) {
      flag = false;
      report.failures.push_back({name, corner, "corner outside |y|<=1"});
    }
  };
  const std::array<Point2, 4> signs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

  for (const auto& s : signs) check("L.a", report.la, {s.x, s.y}, Region::U0, false);
  for (const auto& s : signs) {
    check("L.b", report.lb, {c.a + s.x * c.r, c.b + s.y * c.r}, Region::U1, true);
  }
  // The union of (a,t)+rD over |t| <= delta*b is a rectangle; U0 is convex.
  const double top = c.delta * c.b;
  for (double t : {top, -top}) {
    for (const auto& s : signs) {
      check("L.c", report.lc, {c.a + s.x * c.r, t + s.y * c.r}, Region::U0, false);
    }
  }
  return report;
}

}  // namespace starlike
