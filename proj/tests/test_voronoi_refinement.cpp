// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/voronoi_refinement.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {
namespace {

Space polytope3() { return Space::polytope(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {0.5, 0.5, 0.5}}); }

oracle::Norm norm_of(const Space& s) {
  return [&s](const std::vector<double>& v) { return s.norm(v); };
}

// Every site whose key lies within `span` units of y in each leading coordinate.
void enumerate_sites(const SiteSet& set, std::span<const double> y, long span, std::vector<SiteKey>& keys,
                     std::vector<Vector>& points) {
  const std::size_t k = set.level();
  SiteKey base(k), idx(k, -span);
  for (std::size_t i = 0; i < k; ++i) base[i] = std::lround(y[i] / set.unit());
  for (;;) {
    SiteKey key(k);
    for (std::size_t i = 0; i < k; ++i) key[i] = base[i] + idx[i];
    if (set.is_site(key)) {
      keys.push_back(key);
      points.push_back(set.point(key));
    }
    std::size_t i = 0;
    while (i < k && idx[i] == span) idx[i++] = -span;
    if (i == k) break;
    ++idx[i];
  }
}

TEST(SeparatedNet, SeparatedAndGridMaximal) {
  const Space s = polytope3();
  const double r = 0.1;
  const SeparatedNet net = build_separated_net(s, 2, r, 1.0);
  ASSERT_FALSE(net.keys.empty());
  EXPECT_EQ(net.keys[0], (SiteKey{0, 0}));
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    for (std::size_t j = i + 1; j < net.points.size(); ++j) {
      Vector d(3);
      for (int c = 0; c < 3; ++c) d[c] = net.points[i][c] - net.points[j][c];
      ASSERT_GE(s.norm(d), 2 * r - 1e-12);
    }
  }
  // No grid node inside the ball is 2r away from every net point.
  for (long a = -20; a <= 20; ++a) {
    for (long b = -20; b <= 20; ++b) {
      const Vector g{a * r / 2, b * r / 2, 0};
      if (s.norm(g) > 1.0) continue;
      double best = INFINITY;
      for (const auto& p : net.points) best = std::min(best, s.norm(Vector{g[0] - p[0], g[1] - p[1], 0}));
      ASSERT_LT(best, 2 * r) << a << "," << b;
    }
  }
}

TEST(SiteSet, LayoutsByNorm) {
  // SiteSet keeps a pointer to its space, so the spaces must outlive it.
  const Space l2_3 = Space::lp(3, 2.0), linf5 = Space::lp(5, INFINITY), l2_5 = Space::lp(5, 2.0),
              l2_6 = Space::lp(6, 2.0), l1_5 = Space::lp(5, 1.0), poly = polytope3();
  EXPECT_EQ(SiteSet(l2_3, 0, 0.1).layout(), SiteLayout::Origin);
  EXPECT_EQ(SiteSet(linf5, 4, 0.1).layout(), SiteLayout::CoordinateLattice);
  EXPECT_EQ(SiteSet(l2_5, 4, 0.1).layout(), SiteLayout::CoordinateLattice);
  EXPECT_EQ(SiteSet(l2_6, 5, 0.1).layout(), SiteLayout::GreedyNet);
  EXPECT_EQ(SiteSet(l1_5, 4, 0.1).layout(), SiteLayout::Checkerboard);
  EXPECT_EQ(SiteSet(poly, 2, 0.1).layout(), SiteLayout::GreedyNet);
}

TEST(SiteSet, LatticeExamples) {
  const Space linf = Space::lp(3, INFINITY), l1 = Space::lp(4, 1.0);
  const SiteSet cube(linf, 2, 0.1);
  EXPECT_DOUBLE_EQ(cube.unit(), 0.2);
  EXPECT_EQ(cube.locate(Vector{0.31, -0.05, 0}), (SiteKey{2, 0}));
  // A large trailing coordinate makes every nearby site tie; the first one wins.
  EXPECT_EQ(cube.locate(Vector{0.31, -0.05, 7}), (SiteKey{0, 0}));
  EXPECT_EQ(cube.point(SiteKey{2, -1}), (Vector{0.4, -0.2, 0}));
  const SiteSet checker(l1, 3, 0.1);
  ASSERT_EQ(checker.layout(), SiteLayout::Checkerboard);
  EXPECT_TRUE(checker.is_site(SiteKey{1, 1, 0}));
  EXPECT_FALSE(checker.is_site(SiteKey{1, 0, 0}));
  EXPECT_TRUE(checker.precedes(SiteKey{0, 0, 0}, SiteKey{-1, -1, 0}));
  EXPECT_TRUE(checker.precedes(SiteKey{-1, -1, 0}, SiteKey{-1, 1, 0}));
  EXPECT_FALSE(checker.precedes(SiteKey{-1, 1, 0}, SiteKey{-1, -1, 0}));
}

TEST(SiteSet, TiesGoToFirstSite) {
  // Midway between two lattice sites: the smaller norm, then the smaller key.
  const Space l2_2 = Space::lp(2, 2.0), l2_3 = Space::lp(3, 2.0);
  const SiteSet cube(l2_2, 1, 0.1);
  EXPECT_EQ(cube.locate(Vector{0.1, 0}), (SiteKey{0}));
  EXPECT_EQ(cube.locate(Vector{0.3, 0}), (SiteKey{1}));
  EXPECT_EQ(cube.locate(Vector{-0.3, 0}), (SiteKey{-1}));
  const SiteSet l2(l2_3, 2, 0.1);
  EXPECT_EQ(l2.locate(Vector{0.1, 0.1, 0}), (SiteKey{0, 0}));
  EXPECT_EQ(l2.locate(Vector{0.3, 0.3, 0}), (SiteKey{1, 1}));
  EXPECT_EQ(l2.locate(Vector{-0.3, 0.3, 0}), (SiteKey{-1, 1}));
}

class SiteSetOracle : public ::testing::TestWithParam<int> {};

TEST_P(SiteSetOracle, LocateMatchesBruteForce) {
  const std::vector<Space> spaces{Space::lp(3, 1.0), Space::lp(3, 2.0), Space::lp(3, INFINITY), polytope3()};
  const Space& s = spaces[GetParam()];
  const SiteSet set(s, 2, 0.1);
  const oracle::Norm norm = norm_of(s);
  Rng rng(11 + GetParam());
  for (int i = 0; i < 3000; ++i) {
    Vector y = random_box(3, 1.5, rng);
    if (i % 3 == 0) {
      // Snap to the half-unit grid to provoke ties.
      for (int c = 0; c < 2; ++c) y[c] = std::round(y[c] / (set.unit() / 2)) * (set.unit() / 2);
      y[2] = 0.0;
    }
    const SiteKey got = set.locate(y);
    std::vector<SiteKey> keys;
    std::vector<Vector> points;
    if (set.layout() == SiteLayout::GreedyNet) {
      const auto net = set.net();
      keys = net->keys;
      points = net->points;
    } else {
      // Ties in l_inf reach as far as the trailing coordinates.
      const long span = 3 + static_cast<long>(std::ceil(std::abs(y[2]) / set.unit()));
      enumerate_sites(set, y, span, keys, points);
    }
    const std::size_t want = oracle::nearest_first(norm, y, keys, points, kTieTolerance);
    ASSERT_EQ(got, keys[want]) << "point " << y[0] << "," << y[1] << "," << y[2];
    Vector d = y;
    for (int c = 0; c < 3; ++c) d[c] -= points[want][c];
    EXPECT_NEAR(set.nearest_distance(y), s.norm(d), 1e-12);
    EXPECT_LE(set.nearest_distance(Vector{y[0], y[1], 0}), set.covering_radius() + 1e-12);
    const auto cands = set.candidates(y);
    EXPECT_NE(std::find(cands.begin(), cands.end(), got), cands.end());
  }
}

INSTANTIATE_TEST_SUITE_P(Spaces, SiteSetOracle, ::testing::Values(0, 1, 2, 3));

class StarlikeTest : public ::testing::TestWithParam<double> {
 protected:
  void SetUp() override {
    cyl_ = std::make_unique<CylinderTiling>(Space::lp(3, GetParam()), make_template(Variant::A, 1.3, 0.9),
                                            ConstructionOptions{});
    tiling_ = std::make_unique<StarlikeTiling>(*cyl_);
  }
  std::unique_ptr<CylinderTiling> cyl_;
  std::unique_ptr<StarlikeTiling> tiling_;
};

TEST_P(StarlikeTest, CoveringDisjointnessNormality) {
  const double r = cyl_->constants().r;
  const double K = cyl_->derived().Kbound;
  Rng rng(21);
  for (int i = 0; i < 5000; ++i) {
    const Vector x = random_box(3, 10.0, rng);
    const FullTileId id = tiling_->locate_full(x);
    ASSERT_TRUE(tiling_->is_member(x, id, 0.0)) << to_string(id);
    const auto owners = tiling_->strict_owners(x, 1e-3);
    ASSERT_LE(owners.size(), 1u);
    if (owners.size() == 1) ASSERT_EQ(owners[0], id);
    const Vector c = tiling_->full_center(id);
    Vector d = x;
    for (int k = 0; k < 3; ++k) d[k] -= c[k];
    ASSERT_LE(cyl_->space().norm(d) / r, K);
  }
}

TEST_P(StarlikeTest, InnerBallAroundCenters) {
  const double r = cyl_->constants().r * (1 - 1e-6);
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const FullTileId id = tiling_->locate_full(random_box(3, 10.0, rng));
    const Vector c = tiling_->full_center(id);
    for (int s = 0; s < 20; ++s) {
      const Vector u = random_unit(cyl_->space(), rng);
      const double t = r * rng.uniform();
      Vector y = c;
      for (int k = 0; k < 3; ++k) y[k] += t * u[k];
      ASSERT_TRUE(tiling_->is_member(y, id, 0.0)) << to_string(id);
    }
  }
}

TEST_P(StarlikeTest, TilesAreStarlikeAboutCenters) {
  Rng rng(23);
  for (int i = 0; i < 6; ++i) {
    const FullTileId id = tiling_->locate_full(random_box(3, 8.0, rng));
    const StarlikeReport rep = tiling_->starlike_check(id, 200, 100 + i);
    EXPECT_TRUE(rep.ok()) << to_string(id);
    EXPECT_GT(rep.members, 0u);
  }
}

TEST_P(StarlikeTest, InvalidIds) {
  FullTileId id = tiling_->locate_full(Vector{0.05, 0.02, 0.01});
  EXPECT_EQ(id.cyl.k, 0u);
  EXPECT_TRUE(id.site.empty());
  id.site = {1};
  EXPECT_TRUE(tiling_->invalid_reason(id).has_value());
  EXPECT_THROW(tiling_->full_center(id), Error);
  EXPECT_THROW(tiling_->is_member(Vector{1, 2}, tiling_->locate_full(Vector{0, 0, 0}), 0.0), Error);
}

INSTANTIATE_TEST_SUITE_P(Lp, StarlikeTest, ::testing::Values(1.0, 2.0, INFINITY),
                         [](const auto& info) {
                           return std::isinf(info.param) ? std::string("inf")
                                                         : std::to_string(static_cast<int>(info.param));
                         });

}  // namespace
}  // namespace starlike
