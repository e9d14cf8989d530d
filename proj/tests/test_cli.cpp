// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" STARLIKE_CLI_PATH "' " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("starlike-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("l2.json", R"({"version":1,"space":{"dim":3,"family":"lp","p":2},"sampling":{"count":150}})");
    write("bad_r.json",
          R"({"version":1,"space":{"dim":2,"family":"lp","p":2},"template":{"r":0.2},"sampling":{"count":20}})");
  }
  void TearDown() override { fs::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string env() const { return "STARLIKE_CACHE_DIR='" + path("cache") + "'"; }
  fs::path dir_;
};

TEST_F(Cli, HelpExitsZero) {
  const Result r = run("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* sub : {"constants", "locate", "verify", "render", "net"}) {
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
  }
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, Constants) {
  Result r = run("constants --variant A --a 1.3 --b 0.9");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("177"), std::string::npos);
  r = run("constants --variant B --a 1.8 --b 0.8");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("117.5"), std::string::npos);
  EXPECT_EQ(run("constants --variant A --a 1.0 --b 0.9").code, 2);
  EXPECT_EQ(run("constants --variant B --a 1.4 --b 0.8").code, 2);
}

TEST_F(Cli, LocateAndDimensionMismatch) {
  Result r = run("locate --config " + path("l2.json") + " --point 0.5,-3,2", env());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"tile\""), std::string::npos);
  EXPECT_FALSE(fs::is_empty(dir_ / "cache"));
  EXPECT_EQ(run("locate --config " + path("l2.json") + " --point 1,2", env()).code, 3);
  EXPECT_EQ(run("locate --config " + path("missing.json") + " --point 1,2,3", env()).code, 2);
}

TEST_F(Cli, VerifyIsByteIdentical) {
  const std::string base = "verify --config " + path("l2.json") + " --out ";
  ASSERT_EQ(run(base + path("a.json"), env()).code, 0);
  ASSERT_EQ(run("--no-cache " + base + path("b.json") + " --log " + path("log.jsonl")).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_FALSE(slurp(path("log.jsonl")).empty());
  ASSERT_EQ(run(base + path("c.json") + " --seed 99 --samples 60", env()).code, 0);
  EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, VerifyFailureAndWriteFailure) {
  EXPECT_EQ(run("verify --config " + path("bad_r.json") + " --out " + path("bad.json"), env()).code, 1);
  EXPECT_NE(slurp(path("bad.json")).find("L.c"), std::string::npos);
  EXPECT_EQ(run("verify --config " + path("l2.json") + " --samples 10 --out /nonexistent/dir/r.json", env()).code, 4);
}

TEST_F(Cli, RenderAndNet) {
  const Result r = run("render --config " + path("l2.json") + " --plane 1:2 --bbox -4:4 --pixels 60 --out " +
                        path("s.svg"),
                    env());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(path("s.svg")).rfind("<svg", 0), 0u);
  EXPECT_EQ(run("render --config " + path("l2.json") + " --plane 1:4 --out " + path("t.svg"), env()).code, 3);
  const Result n = run("net --config " + path("l2.json"), env());
  EXPECT_EQ(n.code, 0);
  EXPECT_NE(n.out.find("levels"), std::string::npos);
}

}  // namespace
