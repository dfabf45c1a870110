#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "uqr/io.hpp"

namespace fs = std::filesystem;
using uqr::Json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("uqr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string config(const Json& j) const {
    const auto p = path("config.json");
    uqr::write_text(p, j.dump());
    return p;
  }

  CliResult invoke(std::vector<std::string> args) const {
    args.insert(args.begin(), "uqr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = uqr::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, PullbackWritesMeasureAndReport) {
  const Json cfg = {{"schema_version", 1},
                    {"map", {{"preset", "z2"}}},
                    {"pullback", {{"seed_point", {{"chart", {1.0, 0.0}}}}, {"k", 10}, {"snapshots", {3}}}}};
  const auto out = path("mu.json");
  const auto r = invoke({"pullback", "--config", config(cfg), "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto mu = uqr::read_measure(out);
  EXPECT_EQ(mu.size(), 1024u);
  EXPECT_NEAR(mu.total_mass(), 1.0, 1e-12);
  EXPECT_EQ(uqr::read_measure(out + ".k3.json").size(), 8u);
  const auto report = Json::parse(uqr::read_text(out + ".report.json"));
  EXPECT_EQ(report["metadata"]["schema_version"], 1);
  EXPECT_TRUE(report["convergence"]["converged"].get<bool>());
}

TEST_F(CliTest, CsvFormat) {
  const Json cfg = {{"schema_version", 1},
                    {"map", {{"preset", "chebyshev"}}},
                    {"pullback", {{"seed_point", {{"chart", {0.5, 0.0}}}}, {"k", 4}}}};
  const auto out = path("mu.csv");
  ASSERT_EQ(invoke({"pullback", "--config", config(cfg), "--out", out, "--format", "csv"}).code, 0);
  EXPECT_EQ(uqr::read_measure(out).size(), 16u);
  EXPECT_TRUE(fs::exists(out + ".convergence.csv"));
}

TEST_F(CliTest, MalformedCoefficientsNameTheField) {
  const Json cfg = {{"schema_version", 1},
                    {"map", {{"family", "rational"}, {"numerator", {{0, 0}, {0}, {1, 0}}}}},
                    {"pullback", {{"seed_point", {{"chart", {0.5, 0.0}}}}, {"k", 2}}}};
  const auto r = invoke({"pullback", "--config", config(cfg), "--out", path("x.json")});
  EXPECT_EQ(r.code, uqr::cli::kExitConfig);
  EXPECT_NE(r.err.find("map.numerator"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingSchemaVersionIsConfigError) {
  const auto r = invoke({"capacity", "--config", config(Json{{"map", {{"preset", "z2"}}}})});
  EXPECT_EQ(r.code, uqr::cli::kExitConfig);
  EXPECT_NE(r.err.find("schema_version"), std::string::npos);
  EXPECT_EQ(invoke({"frobnicate"}).code, uqr::cli::kExitConfig);
}

TEST_F(CliTest, VerifyExceptionalSeedFailsConvergence) {
  const Json cfg = {{"schema_version", 1},
                    {"map", {{"preset", "z2"}}},
                    {"pullback", {{"seed_point", {{"chart", {0.0, 0.0}}}}, {"k", 6}}},
                    {"verify", {{"julia", {{"spacing", 0.05}}}}}};
  const auto r = invoke({"verify", "--config", config(cfg)});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "FAILED-CONVERGENCE");
  EXPECT_DOUBLE_EQ(j["stages"]["atom_scan"].back()["max_mass"].get<double>(), 1.0);
}

TEST_F(CliTest, VerifyCircleMeasureIsOk) {
  const Json cfg = {{"schema_version", 1},
                    {"map", {{"preset", "z2"}}},
                    {"verify", {{"circle", 1024}, {"julia", {{"spacing", 0.02}}}}}};
  const auto r = invoke({"verify", "--config", config(cfg)});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "OK") << r.out;
  EXPECT_LT(j["stages"]["balance"]["residual"].get<double>(), 1e-12);
}

TEST_F(CliTest, CapacityTwoPoints) {
  Json points = Json::array();
  points.push_back({{"chart", {0.0, 0.0}}});
  points.push_back({{"chart", "inf"}});
  const Json cfg = {{"schema_version", 1}, {"map", {{"preset", "z2"}}}, {"capacity", {{"points", points}}}};
  const auto r = invoke({"capacity", "--config", config(cfg)});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["weights"][0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["weights"][1].get<double>(), 0.5, 1e-12);
}

TEST_F(CliTest, ExceptionalAndMixing) {
  const Json cfg = {{"schema_version", 1},
                    {"map", {{"preset", "z3"}}},
                    {"mixing", {{"circle", 512}, {"phi", 2}, {"k_max", 5}}}};
  const auto e = invoke({"exceptional", "--config", config(cfg)});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(Json::parse(e.out)["points"].size(), 2u);
  const auto m = invoke({"mixing", "--config", config(cfg), "--seed", "9"});
  ASSERT_EQ(m.code, 0) << m.err;
  const auto j = Json::parse(m.out);
  EXPECT_EQ(j["metadata"]["seed"], 9);
  EXPECT_EQ(j["correlations"].size(), 6u);
}

TEST_F(CliTest, DeviationSmallRun) {
  const Json cfg = {{"schema_version", 1},
                    {"map", {{"preset", "z2"}}},
                    {"deviation",
                     {{"grid_size", 40}, {"max_degree", 1}, {"epsilon", {0.1}}, {"k", {0, 2}}, {"omega_seeds", 64},
                      {"omega_budget", 8}}}};
  const auto r = invoke({"deviation", "--config", config(cfg)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["reports"].size(), 6u);
}
