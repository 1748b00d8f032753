#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "gpcuntz/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = gpcuntz::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(GPCUNTZ_SAMPLES_DIR) + "/params/" + name; }

gpcuntz::Json json_of(const Result& r) { return gpcuntz::Json::parse(r.out); }

}  // namespace

TEST(Cli, NormalizeText) {
  const Result r = run({"normalize", "-N", "2", "s1* s1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "I\n");
  EXPECT_EQ(run({"normalize", "-N", "2", "s1* s2"}).out, "0\n");
}

TEST(Cli, NormalizeExpandJson) {
  const Result r = run({"normalize", "-N", "2", "--expand", "1", "--format", "json", "I"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["normal_form"], "s1 s1* + s2 s2*");
  EXPECT_EQ(j["terms"].size(), 2u);
}

TEST(Cli, ParseErrorReportsOffset) {
  const Result r = run({"normalize", "-N", "3", "s1 + s5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("5"), std::string::npos) << r.err;
}

TEST(Cli, StateEval) {
  const Result r = run({"state-eval", "--param", sample("cycle_e1e2.json"), "s1 s2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1 0\n");  // real and imaginary parts
}

TEST(Cli, ClassifyPeriodicCycle) {
  const Result r = run({"classify", "--param", sample("cycle_e1e1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["irreducible"], false);
  EXPECT_EQ(j["p"], 2);
  EXPECT_EQ(j["category"], "finite_sum");
}

TEST(Cli, ClassifyRotationAndGrayZone) {
  const auto rot = json_of(run({"classify", "--param", sample("rotation_third.json")}));
  EXPECT_EQ(rot["category"], "direct_integral");
  EXPECT_EQ(rot["base_length"], 3);
  const auto gz = json_of(run({"classify", "--param", sample("gray_zone.json")}));
  EXPECT_EQ(gz["category"], "gray_zone");
  EXPECT_TRUE(gz["irreducible"].is_null());
}

TEST(Cli, EquivalentAndDecompose) {
  const Result e = run({"equivalent", "--param", sample("cycle_e1e2.json"), "--param2", sample("cycle_e2e1.json")});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(json_of(e)["equivalent"], true);
  const Result d = run({"decompose", "--param", sample("cycle_diag_cube.json")});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(json_of(d)["p"], 3);
  EXPECT_EQ(json_of(d)["components"].size(), 3u);
}

TEST(Cli, DiagnosticsRotationThird) {
  // sum over n <= 100 of 1 - |cos(2 pi/3)| = 50
  const Result r = run({"diagnostics", "--rotation", "1/3", "--p", "1", "--M", "100", "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("S(1,100) = ", 0), 0u) << r.out;
  const double s = std::stod(r.out.substr(11));
  EXPECT_NEAR(s, 50.0, 1e-9);
}

TEST(Cli, DiagnosticsGrayZoneTarget) {
  const Result r = run({"diagnostics", "--generator", "gray-zone", "--M", "500", "--target", "[0.7071067811865476, 0.7071067811865476]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_LT(j["S"].get<double>(), std::numbers::pi * std::numbers::pi / 3.0);
  EXPECT_LT(j["target_sum"].get<double>(), std::numbers::pi * std::numbers::pi / 3.0);
}

TEST(Cli, RepBuildCooHeader) {
  const Result r = run({"rep-build", "--param", sample("cycle_e1e2.json"), "--depth", "2", "--format", "matrix-coo"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# generator 1 ", 0), 0u) << r.out.substr(0, 80);
  EXPECT_NE(r.out.find("# labels"), std::string::npos);
}

TEST(Cli, VerifyAndCarCheck) {
  EXPECT_EQ(run({"verify", "--param", sample("chain_explicit.json"), "--depth", "3"}).code, 0);
  const Result c = run({"car-check", "--n", "3"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(json_of(c)["passed"], true);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "--param", sample("cycle_e1e1.json"), "--format", "matrix-coo"}).code, 2);
  EXPECT_EQ(run({"classify", "--param", sample("cycle_e1e1.json"), "-N", "3"}).code, 1);
  EXPECT_EQ(run({"classify", "--param", "/nonexistent/param.json"}).code, 1);
  EXPECT_EQ(run({"classify", "--inline", R"({"kind": "cycle", "factors": [[[1, 0], [1, 0]]]})"}).code, 1);
  EXPECT_EQ(run({"classify", "--inline", R"({"kind": "cycle"})"}).code, 1);
  EXPECT_EQ(run({"classify", "--inline", "{not json"}).code, 1);
}

TEST(Cli, ToleranceFromEnvironment) {
  ::setenv("GPCUNTZ_TOL", "1e-3", 1);
  EXPECT_DOUBLE_EQ(gpcuntz::cli::tolerance_from_env(), 1e-3);
  const auto j = json_of(run({"car-check", "--n", "2"}));
  EXPECT_DOUBLE_EQ(j["tolerance"].get<double>(), 1e-3);
  ::unsetenv("GPCUNTZ_TOL");
  EXPECT_DOUBLE_EQ(gpcuntz::cli::tolerance_from_env(), gpcuntz::cli::kDefaultTol);
}

TEST(Cli, SuiteIsDeterministic) {
  const Result a = run({"verify", "--suite", "--seed", "7", "--count", "1"});
  const Result b = run({"verify", "--suite", "--seed", "7", "--count", "1"});
  ASSERT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
}
