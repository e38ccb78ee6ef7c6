#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pdm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::string const& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" PDM_CLI_PATH "' " + args + " > log.txt 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  static std::string config(std::string const& name) { return std::string("-c '") + PDM_SAMPLE_CONFIGS + "/" + name + "'"; }
  std::string read(std::string const& file) const {
    std::ifstream f(dir_ / file, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, LandauSampleMatchesAnalyticLevels) {
  ASSERT_EQ(run("landau " + config("landau.yaml") + " -o out.json"), 0) << read("log.txt");
  const auto j = Json::parse(read("out.json"));
  const auto analytic = j["result"]["analytic_spectrum"].get<std::vector<double>>();
  const auto numeric = j["result"]["numeric_spectrum"].get<std::vector<double>>();
  ASSERT_EQ(analytic.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(analytic[i], 2.0 * i + 1);
    EXPECT_NEAR(numeric[i], analytic[i], 1e-6 * analytic[i]);
  }
  EXPECT_TRUE(j["result"]["passed"].get<bool>());
}

TEST_F(Cli, GaugeCheckReportsEligiblePair) {
  ASSERT_EQ(run("gauge-check " + config("gauge_check.yaml") + " -o g.json"), 0) << read("log.txt");
  const auto j = Json::parse(read("g.json"));
  EXPECT_TRUE(j["result"]["eligible"].get<bool>());
  EXPECT_LE(j["result"]["max_residual"].get<double>(), 1e-10);
}

TEST_F(Cli, PairsSucceeds) {
  EXPECT_EQ(run("pairs -o p.json"), 0) << read("log.txt");
  EXPECT_TRUE(Json::parse(read("p.json"))["result"]["passed"].get<bool>());
}

TEST_F(Cli, CsvOutput) {
  ASSERT_EQ(run("landau " + config("landau.yaml") + " --format csv -o l.csv"), 0) << read("log.txt");
  EXPECT_EQ(read("l.csv").rfind("n,analytic,numeric,rel_error,overlap\r\n", 0), 0u);
}

TEST_F(Cli, BadGridIsValidationError) {
  EXPECT_EQ(run("landau " + config("landau.yaml") + " --set grid.n=2"), 2);
  EXPECT_EQ(run("spectrum --set grid.n=2"), 2);
}

TEST_F(Cli, UnknownPairIsValidationError) {
  EXPECT_EQ(run("gauge-check " + config("gauge_check.yaml") + " --set em.pair=no-such-pair"), 2);
  EXPECT_NE(read("log.txt").find("S-unity"), std::string::npos);
}

TEST_F(Cli, ScenarioMismatchIsValidationError) { EXPECT_EQ(run("spectrum " + config("landau.yaml")), 2); }

TEST_F(Cli, MalformedYamlIsValidationError) {
  std::ofstream(dir_ / "bad.yaml") << "grid: [1, 2\n";
  EXPECT_EQ(run("spectrum -c bad.yaml"), 2);
}

TEST_F(Cli, MissedToleranceExitsThree) {
  EXPECT_EQ(run("landau " + config("landau.yaml") + " --set solver.tol=1e-15 -o t.json"), 3);
  EXPECT_FALSE(Json::parse(read("t.json.manifest.json"))["passed"].get<bool>());
}

TEST_F(Cli, OutputIsDeterministicAndManifestCarriesHash) {
  ASSERT_EQ(run("classical " + config("classical.yaml") + " -o a.json"), 0) << read("log.txt");
  ASSERT_EQ(run("classical " + config("classical.yaml") + " -o b.json"), 0);
  EXPECT_EQ(read("a.json"), read("b.json"));
  const auto m1 = Json::parse(read("a.json.manifest.json"));
  const auto m2 = Json::parse(read("b.json.manifest.json"));
  EXPECT_EQ(m1["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(m1["config_hash"], m2["config_hash"]);
  EXPECT_TRUE(m1.contains("versions"));
  ASSERT_EQ(run("classical " + config("classical.yaml") + " --set classical.x0=0.25 -o c.json"), 0);
  EXPECT_NE(Json::parse(read("c.json.manifest.json"))["config_hash"], m1["config_hash"]);
}

TEST_F(Cli, IsospectralSample) {
  EXPECT_EQ(run("isospectral " + config("isospectral.yaml") + " -o i.json"), 0) << read("log.txt");
}
