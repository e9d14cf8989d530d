// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/normed_space.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "starlike/error.hpp"

namespace starlike {
namespace {

Space hexagonal() { return Space::polytope(2, {{1, 0}, {0, 1}, {1, -1}}); }

// Shifting along e_1 lowers the norm of (0, 1, 1) from 1.8 to 1.
Space diagonal() { return Space::polytope(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.9, 0.9, 0.9}, {0.5, -0.5, 0.5}}); }

std::vector<Space> sample_spaces(std::size_t dim) {
  std::vector<Space> out{Space::lp(dim, 1.0), Space::lp(dim, 1.5), Space::lp(dim, 2.0), Space::lp(dim, 4.0),
                         Space::lp(dim, INFINITY)};
  if (dim == 3) {
    out.push_back(Space::polytope(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {0.5, 0.5, 0.5}}));
    out.push_back(diagonal());
  }
  return out;
}

Vector gaussian(std::mt19937_64& gen, std::size_t dim, double scale = 3.0) {
  std::normal_distribution<double> n(0.0, scale);
  Vector x(dim);
  for (double& c : x) c = n(gen);
  return x;
}

TEST(Norm, Examples) {
  EXPECT_DOUBLE_EQ(Space::lp(2, 2.0).norm(Vector{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(Space::lp(3, INFINITY).norm(Vector{1, -2, 0.5}), 2.0);
  EXPECT_NEAR(Space::lp(2, 1.5).norm(Vector{1, 1}), std::pow(2.0, 2.0 / 3.0), 1e-15);
}

TEST(Norm, AxiomsOnSamples) {
  std::mt19937_64 gen(1);
  for (const Space& s : sample_spaces(3)) {
    EXPECT_EQ(s.norm(Vector(3, 0.0)), 0.0);
    for (int i = 0; i < 1000; ++i) {
      const Vector x = gaussian(gen, 3), y = gaussian(gen, 3);
      Vector sum(3), scaled(3);
      for (int c = 0; c < 3; ++c) {
        sum[c] = x[c] + y[c];
        scaled[c] = -2.5 * x[c];
      }
      EXPECT_LE(s.norm(sum), s.norm(x) + s.norm(y) + 1e-12);
      EXPECT_NEAR(s.norm(scaled), 2.5 * s.norm(x), 1e-12 * s.norm(x));
      EXPECT_GT(s.norm(x), 0.0);
    }
  }
}

TEST(Norm, PolytopeRejectsUnnormalizedBasis) {
  EXPECT_THROW(Space::polytope(2, {{2, 0}, {0, 1}}), Error);
  // Unit basis vectors, but (1.2, 0.5) lies in the unit ball, so e*_1 has norm above 1.
  EXPECT_THROW(Space::polytope(2, {{1, -0.4}, {0, 1}}), Error);
}

TEST(NormingFunctional, Examples) {
  const Functional f2 = Space::lp(2, 2.0).norming_functional(Vector{3, 4});
  EXPECT_NEAR(f2[0], 0.6, 1e-15);
  EXPECT_NEAR(f2[1], 0.8, 1e-15);
  EXPECT_EQ(Space::lp(2, 1.0).norming_functional(Vector{1, -2}), (Functional{1, -1}));
  EXPECT_EQ(Space::lp(2, INFINITY).norming_functional(Vector{1, -2}), (Functional{0, -1}));
  EXPECT_EQ(Space::lp(3, INFINITY).norming_functional(Vector{2, -2, 1}), (Functional{1, 0, 0}));
  EXPECT_EQ(Space::lp(3, 1.0).norming_functional(Vector{0, -2, 1}), (Functional{0, -1, 1}));
}

TEST(NormingFunctional, ZeroVectorRejected) {
  try {
    Space::lp(2, 2.0).norming_functional(Vector{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(NormingFunctional, DualUnitAndNorming) {
  std::mt19937_64 gen(2);
  for (const Space& s : sample_spaces(3)) {
    for (int i = 0; i < 200; ++i) {
      const Vector x = gaussian(gen, 3);
      const Functional f = s.norming_functional(x);
      EXPECT_NEAR(act(f, x), s.norm(x), 1e-10 * s.norm(x)) << s.describe();
      EXPECT_NEAR(s.dual_norm(f), 1.0, 1e-10) << s.describe();
      for (int j = 0; j < 5; ++j) {
        const Vector y = gaussian(gen, 3);
        EXPECT_LE(std::abs(act(f, y)), (1.0 + 1e-8) * s.norm(y));
      }
    }
  }
}

TEST(DualNorm, PolytopeExactDominatesSampling) {
  const Space s = hexagonal();
  std::mt19937_64 gen(4);
  for (int i = 0; i < 50; ++i) {
    const Functional f = gaussian(gen, 2);
    double sampled = 0.0;
    for (int t = 0; t < 2000; ++t) {
      const Vector x = gaussian(gen, 2);
      sampled = std::max(sampled, std::abs(act(f, x)) / s.norm(x));
    }
    const double exact = s.dual_norm(f);
    EXPECT_LE(sampled, exact + 1e-12);
    EXPECT_GE(sampled, 0.97 * exact);
  }
}

TEST(QuotientNorm, Examples) {
  EXPECT_DOUBLE_EQ(Space::lp(3, 2.0).quotient_norm(Vector{3, 4, 0}, 1), 4.0);
  EXPECT_DOUBLE_EQ(Space::lp(3, 1.0).quotient_norm(Vector{5, 1, 2}, 2), 2.0);
  EXPECT_DOUBLE_EQ(Space::lp(3, 2.0).quotient_norm(Vector{3, 4, 0}, 0), 5.0);
  EXPECT_DOUBLE_EQ(Space::lp(3, 2.0).quotient_norm(Vector{3, 4, 0}, 3), 0.0);
}

TEST(QuotientNorm, HexagonalAgreesWithGridOracle) {
  const Space s = hexagonal();
  const oracle::Norm norm = [&](const std::vector<double>& v) { return s.norm(v); };
  const Vector x{1, 1};
  const double grid = oracle::quotient_grid(norm, x, 1, 3.0 * s.norm(x), 30000, 5, 10.0, 1e-4);
  EXPECT_NEAR(s.quotient_norm(x, 1), grid, 1e-6);
  EXPECT_NEAR(s.quotient_norm(x, 1), 1.0, 1e-8);  // the |y| facet is unaffected by shifts along e_1
}

TEST(QuotientNorm, DiagonalPolytopeAgreesWithGridOracle) {
  const Space s = diagonal();
  EXPECT_NEAR(s.quotient_norm(Vector{0, 1, 1}, 1), 1.0, 1e-9);
  const oracle::Norm norm = [&](const std::vector<double>& v) { return s.norm(v); };
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100; ++i) {
    const Vector x = gaussian(gen, 3, 2.0);
    EXPECT_NEAR(s.quotient_norm(x, 1), oracle::quotient_grid(norm, x, 1, 2.0 * s.norm(x) + 1.0, 2000), 1e-6);
    EXPECT_NEAR(s.quotient_norm(x, 2), std::abs(x[2]), 1e-9);
  }
}

TEST(QuotientNorm, GridOracleReproducesClosedForms) {
  // The oracle itself, checked where the answer is known.
  std::mt19937_64 gen(6);
  const Space l1 = Space::lp(3, 1.0), linf = Space::lp(3, INFINITY);
  for (const Space* s : {&l1, &linf}) {
    const oracle::Norm norm = [&](const std::vector<double>& v) { return s->norm(v); };
    for (int i = 0; i < 20; ++i) {
      const Vector x = gaussian(gen, 3, 1.0);
      EXPECT_NEAR(oracle::quotient_grid(norm, x, 2, 3.0 * s->norm(x)), std::abs(x[2]), 1e-9);
    }
  }
}

TEST(QuotientNorm, MonotoneAndBoundedByNorm) {
  std::mt19937_64 gen(7);
  for (const Space& s : sample_spaces(3)) {
    for (int i = 0; i < 300; ++i) {
      const Vector x = gaussian(gen, 3);
      double prev = s.norm(x);
      for (std::size_t k = 1; k <= 3; ++k) {
        const double q = s.quotient_norm(x, k);
        EXPECT_LE(q, prev + 1e-8) << s.describe();
        prev = q;
      }
    }
  }
}

TEST(QuotientNorm, KeyInequalityAcrossLevels) {
  std::mt19937_64 gen(8);
  for (const Space& s : sample_spaces(3)) {
    for (int i = 0; i < (s.is_lp() ? 10000 : 1000); ++i) {
      const Vector x = gaussian(gen, 3);
      for (std::size_t k = 0; k < 3; ++k) {
        const double lhs = s.quotient_norm(x, k);
        const double rhs = std::abs(x[k]) + 2.0 * s.quotient_norm(x, k + 1);
        ASSERT_LE(lhs, rhs + 1e-6) << s.describe() << " k=" << k;
      }
    }
  }
}

TEST(QuotientNorm, LpZeroLeadingIsTheNorm) {
  std::mt19937_64 gen(10);
  for (const Space& s : sample_spaces(4)) {
    const Vector x = zero_leading(gaussian(gen, 4), 2);
    EXPECT_DOUBLE_EQ(s.quotient_norm(x, 2), s.norm(x));
  }
}

TEST(QuotientNormingFunctional, VanishesOnSubspaceAndNorms) {
  std::mt19937_64 gen(12);
  for (const Space& s : sample_spaces(3)) {
    for (int i = 0; i < 50; ++i) {
      const Vector x = gaussian(gen, 3);
      for (std::size_t k = 0; k < 3; ++k) {
        const Functional f = s.quotient_norming_functional(x, k);
        for (std::size_t c = 0; c < k; ++c) EXPECT_EQ(f[c], 0.0);
        EXPECT_NEAR(act(f, x), s.quotient_norm(x, k), 1e-7) << s.describe();
        EXPECT_NEAR(s.dual_norm(f), 1.0, 1e-7) << s.describe();
      }
    }
  }
}

}  // namespace
}  // namespace starlike
