// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/cylinder_tiling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {
namespace {

Vector minus(const Vector& x, const Vector& y) {
  Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

TEST(DerivedConstants, MatchExactRationals) {
  const TemplateConstants a = make_template(Variant::A, 1.3, 0.9);
  const DerivedConstants da = compute_K_bound(a, a.delta);
  const oracle::Rational ka = oracle::k_bound({13, 10}, {9, 10}, {1, 10}, {5, 9}, 8);
  EXPECT_NEAR(da.Kbound, ka.value(), 1e-12 * ka.value());
  EXPECT_NEAR(da.central_radius, 4.0 / a.delta, 1e-12);
  const TemplateConstants b = make_template(Variant::B, 1.8, 0.8);
  const oracle::Rational kb = oracle::k_bound({9, 5}, {4, 5}, {2, 15}, {1, 2}, 6);
  EXPECT_NEAR(compute_K_bound(b, b.delta).Kbound, kb.value(), 1e-12 * kb.value());
  const DerivedConstants eff = compute_K_bound(a, a.delta - 0.2);
  const oracle::Rational keff = oracle::k_bound({13, 10}, {9, 10}, {1, 10}, {32, 90}, 8);
  EXPECT_NEAR(eff.Kbound, keff.value(), 1e-12 * keff.value());
}

class CylinderTest : public ::testing::TestWithParam<double> {
 protected:
  void SetUp() override {
    tiling_ = std::make_unique<CylinderTiling>(Space::lp(3, GetParam()), make_template(Variant::A, 1.3, 0.9),
                                               ConstructionOptions{});
  }
  std::unique_ptr<CylinderTiling> tiling_;
};

TEST_P(CylinderTest, LocateIsLowestNonCentralLevel) {
  Rng rng(1);
  for (int i = 0; i < 20000; ++i) {
    const Vector x = random_box(3, 10.0, rng);
    const CylinderTileId id = tiling_->locate_cylinder(x);
    ASSERT_FALSE(tiling_->invalid_reason(id).has_value());
    for (std::size_t m = id.k + 1; m < 3; ++m) {
      ASSERT_EQ(tiling_->quotient(m).locate(x).kind, QuotientKind::Central);
    }
    if (id.k > 0) ASSERT_NE(id.q.kind, QuotientKind::Central);
    ASSERT_EQ(id.q, tiling_->quotient(id.k).locate(x));
    ASSERT_TRUE(tiling_->in_cylinder(x, id, 1e-12));
  }
}

TEST_P(CylinderTest, TubeRadius) {
  const double R = tiling_->derived().R + 1e-6;
  Rng rng(2);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const Vector x = random_box(3, 20.0, rng);
    const CylinderTileId id = tiling_->locate_cylinder(x);
    const Vector axis = tiling_->cylinder_axis(id).x;
    for (std::size_t c = 0; c < id.k; ++c) ASSERT_EQ(axis[c], 0.0);
    worst = std::max(worst, tiling_->space().quotient_norm(minus(x, axis), id.k));
  }
  EXPECT_LE(worst, R);
}

TEST_P(CylinderTest, LevelZeroCylindersAreConvex) {
  Rng rng(3);
  int pairs = 0;
  for (int i = 0; i < 200000 && pairs < 3000; ++i) {
    const Vector x = random_box(3, 3.0, rng), y = random_box(3, 3.0, rng);
    const CylinderTileId id = tiling_->locate_cylinder(x);
    if (id.k != 0 || !(tiling_->locate_cylinder(y) == id)) continue;
    ++pairs;
    const double t = rng.uniform();
    Vector m(3);
    for (int c = 0; c < 3; ++c) m[c] = (1 - t) * x[c] + t * y[c];
    ASSERT_TRUE(tiling_->in_cylinder(m, id, 1e-9)) << to_string(id);
  }
  EXPECT_GT(pairs, 100);
}

TEST_P(CylinderTest, RejectsBadInput) {
  EXPECT_THROW(tiling_->locate_cylinder(Vector{1, 2}), Error);
  const CylinderTileId central_above{1, QuotientTileId::central(1)};
  EXPECT_TRUE(tiling_->invalid_reason(central_above).has_value());
  EXPECT_THROW(tiling_->cylinder_axis(central_above), Error);
  EXPECT_TRUE(tiling_->invalid_reason({3, QuotientTileId::strip(3, 1)}).has_value());
  EXPECT_TRUE(tiling_->invalid_reason({1, QuotientTileId::strip(0, 1)}).has_value());
  EXPECT_THROW(tiling_->system(0), Error);
  EXPECT_THROW(tiling_->system(3), Error);
}

INSTANTIATE_TEST_SUITE_P(Lp, CylinderTest, ::testing::Values(1.0, 2.0, INFINITY),
                         [](const auto& info) {
                           return std::isinf(info.param) ? std::string("inf")
                                                         : std::to_string(static_cast<int>(info.param));
                         });

TEST(CylinderCache, CachedSystemsMatchFreshOnes) {
  const auto dir = std::filesystem::temp_directory_path() / "starlike-cylinder-cache-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const Space s = Space::lp(3, 1.0);
  const TemplateConstants c = make_template(Variant::A, 1.3, 0.9);
  ConstructionOptions cached;
  cached.cache_dir = dir;
  const CylinderTiling first(s, c, cached);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  const CylinderTiling second(s, c, cached);
  const CylinderTiling fresh(s, c, ConstructionOptions{});
  for (std::size_t level = 1; level < 3; ++level) {
    EXPECT_EQ(second.system(level).v, fresh.system(level).v);
    EXPECT_EQ(first.system(level).vstar, fresh.system(level).vstar);
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace starlike
