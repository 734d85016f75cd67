#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SOLRIG_CLI
#error "SOLRIG_CLI must point at the solrig executable"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SOLRIG_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, AnalyzeProjectiveFour) {
  const auto r = run("analyze CP4");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "verdict: ALL_OBSTRUCTED => rigid")) << r.out;
  EXPECT_TRUE(has(r.out, "dim ISD = 24")) << r.out;
  EXPECT_TRUE(has(r.out, "Cao-He")) << r.out;
}

TEST(Cli, AnalyzeStructured) {
  const auto r = run("analyze S2xS2 --format structured-text");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "schema: rigidity-report/1\n")) << r.out;
  EXPECT_TRUE(has(r.out, "verdict: ALL_UNOBSTRUCTED_AT_ORDER_2\n"));
  EXPECT_TRUE(has(r.out, "dim_E2mu: 6\n"));
  const auto cp3 = run("analyze CP3 --format structured-text");
  EXPECT_TRUE(has(cp3.out, "verdict: KERNEL_FAMILY_EXISTS\n"));
  EXPECT_TRUE(has(cp3.out, "kernel_representative_lambda: 1/1,1/1,-1/1,-1/1\n"));
}

TEST(Cli, CheckExamples) {
  const auto a = run("check CP2 --lambda 1,1,-2");
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(has(a.out, "status: OBSTRUCTED\n")) << a.out;
  EXPECT_TRUE(has(a.out, "value: -1/5\n"));
  EXPECT_TRUE(has(a.out, "(self)"));

  const auto b = run("check CP3 --lambda 1,1,-1,-1");
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(has(b.out, "status: UNOBSTRUCTED_AT_ORDER_2\n")) << b.out;
  EXPECT_TRUE(has(b.out, "zero_pairings 15 of 15"));

  EXPECT_EQ(run("check CP2 --lambda 1,-1").code, 2);
  EXPECT_EQ(run("check CP2 --lambda 1,1,x").code, 2);
  EXPECT_EQ(run("check CP2").code, 2);

  const auto c = run("check CP2 --coords 1,0,0,0,0,0,0,0");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(has(c.out, "witness: d2 = 1/1*z1*zb1 + 1/1*z2*zb2 - 2/1*z3*zb3\n")) << c.out;
  EXPECT_TRUE(has(c.out, "value: 1/15\n"));
}

TEST(Cli, GramAndMoments) {
  const auto g = run("gram S2xS2");
  EXPECT_EQ(g.code, 0);
  EXPECT_TRUE(has(g.out, "zero_entries: 56\n")) << g.out;
  const auto csv = run("gram CP2 --format csv");
  EXPECT_TRUE(has(csv.out, "a,b,c,id_a,id_b,id_c,value\n"));
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 121);

  const auto m = run("moments --complex 3 1,1,1");
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(m.out, "1/60\n");
  EXPECT_EQ(run("moments --complex 3 1,0,0 0,1,0").out, "0/1\n");
  EXPECT_EQ(run("moments --real 3 4,0,0").out, "1/5\n");
  EXPECT_EQ(run("moments --complex 3 1,1").code, 2);
}

TEST(Cli, Verify) {
  const auto r = run("verify CP2 --seed 7 --samples 100000");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "result: PASS\n"));
  EXPECT_EQ(run("verify CP2 --samples 10").code, 2);
  EXPECT_EQ(run("verify S3").code, 3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("analyze S1").code, 3);
  EXPECT_EQ(run("analyze CP0").code, 3);
  EXPECT_EQ(run("analyze Q7").code, 2);
  EXPECT_EQ(run("analyze CP2 --bogus").code, 2);
  EXPECT_EQ(run("frobnicate CP2").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("analyze CP2 --format xml").code, 2);
}

TEST(Cli, DeterministicOutput) {
  const auto a = run("verify S2xS2 --seed 5 --samples 50000");
  const auto b = run("verify S2xS2 --seed 5 --samples 50000");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("analyze CP3").out, run("analyze CP3").out);
}

TEST(Cli, OutFile) {
  const std::string path = ::testing::TempDir() + "solrig_cli_out.txt";
  const auto r = run("analyze CP2 --format structured-text --out " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), run("analyze CP2 --format structured-text").out);
}
