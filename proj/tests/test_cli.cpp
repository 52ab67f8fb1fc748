#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SpaceReportsDims) {
  auto r = run({"space", "--algebra", "sp4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"F\": 6"), std::string::npos);
  EXPECT_EQ(run({"space", "--algebra", "so:p=4,q=0"}).out.find("\"F\": 9") != std::string::npos, true);
  EXPECT_NE(run({"space", "--algebra", "gl:n=4"}).out.find("\"F\": 9"), std::string::npos);
}

TEST(Cli, BasesOnlyOnRequest) {
  EXPECT_EQ(run({"space", "--algebra", "u2"}).out.find("\"bases\""), std::string::npos);
  EXPECT_NE(run({"space", "--algebra", "u2", "--with-bases"}).out.find("\"bases\""), std::string::npos);
}

TEST(Cli, InlineAlgebraJson) {
  auto r = run({"space", "--algebra", R"({"basis": [[["1","0"],["0","0"]]], "name": "e11"})"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("e11"), std::string::npos);
  auto b = run({"space", "--algebra", R"({"builder": "sp", "params": {"m": 2}})"});
  EXPECT_EQ(b.code, 0) << b.err;
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run({"check", "--algebra", "glC2", "--f", "[[0,-1,0],[1,0,0],[0,0,0]]"}).code, 0);
  EXPECT_EQ(run({"check", "--algebra", "sp4", "--f", "[[0,0,1],[0,0,0],[0,0,0]]"}).code, 1);
  EXPECT_EQ(run({"check", "--algebra", "so4", "--f", "[[0,0,0],[0,0,0],[0,0,0]]"}).code, 0);
  EXPECT_EQ(run({"flat", "--algebra", "sp4", "--f", "[[\"1/2\",0,0],[0,\"-1/2\",0],[1,0,0]]"}).code, 0);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"check", "--algebra", "sp4", "--f", "[[1,2],[3]]"}).code, 2);
  EXPECT_EQ(run({"check", "--algebra", "sp4", "--f", "[[1.5]]"}).code, 2);
  EXPECT_EQ(run({"check", "--algebra", "sp4", "--f", "[[1,0],[0,1]]"}).code, 2);
  EXPECT_EQ(run({"space", "--algebra", "nosuch"}).code, 2);
  EXPECT_EQ(run({"space"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"space", "--algebra", "sp4", "--v", "1,0,0,0"}).code, 2);
  EXPECT_EQ(run({"space", "--algebra", "sp4", "--format", "yaml"}).code, 2);
}

TEST(Cli, ExistsExamples) {
  EXPECT_EQ(run({"exists", "--family", "product", "--p", "2", "--n", "4", "--seed", "5"}).code, 0);
  auto hpc = run({"exists", "--family", "hpc", "--f", "[[1,0,0],[0,2,0],[0,0,3]]"});
  EXPECT_EQ(hpc.code, 1);
  EXPECT_NE(hpc.out.find("\"verdict\": \"no\""), std::string::npos);
  EXPECT_EQ(run({"exists", "--family", "tangent", "--n", "5"}).code, 2);
  EXPECT_EQ(run({"exists", "--family", "product", "--p", "2", "--n", "4", "--type", "7"}).code, 2);
}

TEST(Cli, HpcFlatness) {
  auto r = run({"exists", "--family", "hpc-flat", "--structure",
                R"({"A": [[-1]], "a": 1, "w1": [-2], "w2": [0], "lambda": 0, "mu": 1})"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("non_flat"), std::string::npos);
  EXPECT_NE(r.out.find("\"-2\""), std::string::npos);
}

TEST(Cli, ClassifyAndOrbitsAndCatalog) {
  EXPECT_EQ(run({"classify-hpc", "--f", "[[1,0,0],[0,1,0],[0,0,5]]"}).code, 0);
  auto o = run({"orbits", "--group", "GL(P0)", "--n", "4", "--p", "2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("[U3]"), std::string::npos);
  EXPECT_EQ(run({"orbits", "--group", "GL(T0)", "--n", "5"}).code, 2);
  auto c = run({"catalog", "--format", "text"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("sp4"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"exists", "--family", "product", "--p", "3", "--n", "5", "--seed", "9",
                                      "--with-bases"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> s{"space", "--algebra", "u11", "--with-bases"};
  EXPECT_EQ(run(s).out, run(s).out);
}

TEST(Cli, MaxDimensionCap) {
  ::setenv("TORSIONLAB_MAX_N", "3", 1);
  EXPECT_EQ(run({"space", "--algebra", "sp4"}).code, 2);
  ::setenv("TORSIONLAB_MAX_N", "zero", 1);
  EXPECT_EQ(run({"space", "--algebra", "sp4"}).code, 2);
  ::unsetenv("TORSIONLAB_MAX_N");
  EXPECT_EQ(run({"space", "--algebra", "sp4"}).code, 0);
}

TEST(Cli, VerifyTargets) {
  auto r = run({"verify-paper", "--target", "u2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS  criterion 10"), std::string::npos);
  EXPECT_EQ(run({"verify-paper", "--target", "nope"}).code, 2);
}

TEST(Cli, Help) { EXPECT_EQ(run({"--help"}).code, 0); }
