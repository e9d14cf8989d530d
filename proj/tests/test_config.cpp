// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>

#include "starlike/error.hpp"

namespace starlike {
namespace {

std::optional<ErrorCode> code_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

TEST(Config, MinimalDefaults) {
  const TilingConfig cfg = parse_config_text(R"({"version":1,"space":{"dim":3,"family":"lp","p":"inf"}})");
  EXPECT_EQ(cfg.space.dim, 3u);
  EXPECT_TRUE(std::isinf(cfg.space.p));
  EXPECT_EQ(cfg.variant, Variant::A);
  EXPECT_DOUBLE_EQ(cfg.epsilon, 0.2);
  EXPECT_EQ(cfg.mode, Mode::Starlike);
  EXPECT_EQ(cfg.sampling.count, 10000u);
  EXPECT_DOUBLE_EQ(cfg.sampling.box, 10.0);
  EXPECT_DOUBLE_EQ(cfg.sampling.tolerances.strict_margin, 1e-3);
  const TemplateConstants c = make_constants(cfg);
  EXPECT_NEAR(c.r, 0.1, 1e-12);
  EXPECT_NEAR(c.delta, 5.0 / 9.0, 1e-12);
}

TEST(Config, FullRoundTrip) {
  const std::string text = R"({"version":1,
    "space":{"dim":3,"family":"polytope","functionals":[[1,0,0],[0,1,0],[0,0,1],[1,-1,0]]},
    "template":{"variant":"B","a":1.8,"b":0.8,"r":0.12},
    "net":{"epsilon":0.1,"seed":9},
    "mode":"projection","projection":{"N":2,"side":0.2},
    "sampling":{"count":50,"box":4,"seed":3,"workers":2,"tolerances":{"geometric":1e-7}}})";
  const TilingConfig cfg = parse_config_text(text);
  EXPECT_EQ(cfg.variant, Variant::B);
  EXPECT_EQ(cfg.space.functionals.size(), 4u);
  EXPECT_EQ(cfg.mode, Mode::Projection);
  EXPECT_EQ(cfg.projection_N, 2u);
  EXPECT_EQ(cfg.sampling.workers, 2u);
  EXPECT_DOUBLE_EQ(*cfg.r, 0.12);
  EXPECT_DOUBLE_EQ(make_constants(cfg).r, 0.12);
  const std::string once = serialize_config(cfg);
  EXPECT_EQ(serialize_config(parse_config_text(once)), once);
  EXPECT_EQ(make_space(cfg.space).dim(), 3u);
}

TEST(Config, Rejections) {
  EXPECT_EQ(code_of("not json"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"space":{"dim":2}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":2,"space":{"dim":2}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2},"extra":1})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2,"p":0.5}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2,"family":"polytope"}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2,"family":"polytope","functionals":[[1,0,0]]}})"),
            ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2},"template":{"a":1.0}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2},"net":{"epsilon":0.6}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2},"mode":"projection","projection":{"N":2}})"),
            ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":2},"sampling":{"workers":0}})"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"version":1,"space":{"dim":"two"}})"), ErrorCode::Config);
}

TEST(Config, MissingFile) {
  try {
    load_config("/nonexistent/starlike.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::Config || e.code() == ErrorCode::Io);
  }
}

}  // namespace
}  // namespace starlike
