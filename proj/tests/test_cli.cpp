#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {
struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(CHROMATIC_BIN) + " " + args + " 2>&1";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p) != nullptr) r.out += buf.data();
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const Result& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chromatic-cli-" + std::to_string(::getpid()) + "-" + name);
}
}  // namespace

TEST(Cli, Subdivide) {
  const Result r = run("subdivide --n 3 --ell 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "169 facets, 99 vertices, euler 1")) << r.out;

  const auto svg = scratch("c.svg");
  const auto js = scratch("c.json");
  EXPECT_EQ(run("subdivide --n 3 --ell 1 --svg " + svg.string() + " --json " + js.string()).code, 0);
  EXPECT_TRUE(std::filesystem::exists(svg));
  EXPECT_TRUE(std::filesystem::exists(js));
  std::filesystem::remove(svg);
  std::filesystem::remove(js);
}

TEST(Cli, FoldingDrawingFails) {
  const auto svg = scratch("fold.svg");
  const Result r = run("subdivide --n 3 --ell 2 --svg " + svg.string() + " --delta 0.5");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r, "embedding check failed")) << r.out;
  std::filesystem::remove(svg);
}

TEST(Cli, Valency) {
  const Result r = run("valency --task sa --n 3 --ell 1 --simplex \"v(1|{v(0),v(1)})\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "{1} v(1|{v(0),v(1)})")) << r.out;
}

TEST(Cli, SolveLocal) {
  Result r = run("solve-local --task sa --n 3 --ell 1 --all");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "13/13 all green")) << r.out;
  r = run("solve-local --task wsb --n 3 --ell 1 --all");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "13/13 all green")) << r.out;
}

TEST(Cli, Renaming) {
  const Result r = run("renaming --n 3 --suite coverage");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "p=3 names {1,2,3,4,5}")) << r.out;
  EXPECT_TRUE(has(r, "contract ok, coverage full")) << r.out;
}

TEST(Cli, Game) {
  Result r = run("game --task sa --n 3 --R 2 --exhaustive");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "13/13 survive")) << r.out;

  const auto t = scratch("t.json");
  r = run("game --task wsb --n 3 --R 3 --moves 4,7 --transcript " + t.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "ProtocolSurvives")) << r.out;
  EXPECT_TRUE(std::filesystem::exists(t));
  std::filesystem::remove(t);

  r = run("game --task sa --n 3 --R 2 --moves \"v(1|{v(0),v(1),v(2)})\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "ProtocolSurvives")) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("subdivide --n 0").code, 2);
  EXPECT_EQ(run("game --task sa --n 2 --R 2 --exhaustive").code, 2);
  EXPECT_EQ(run("game --task sa --n 3 --R 2 --moves 99").code, 2);
  EXPECT_EQ(run("valency --task sa --n 3 --ell 1 --simplex \"v(0|{v(9)})\"").code, 2);
  EXPECT_EQ(run("verify --suite nonsense").code, 2);
}

TEST(Cli, VerifyWritesArtifacts) {
  const auto dir = scratch("verify");
  const Result r = run("verify --suite counts,consensus --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "PASS counts/fubini(3,1)")) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "counts.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "consensus.json"));
  std::filesystem::remove_all(dir);
}
