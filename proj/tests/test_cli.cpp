#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "potts/cli/app.hpp"

using namespace potts;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "potts");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("potts-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST(Cli, SolveWithChecksPasses) {
  Result r = run_cli({"solve", "--model", "maps", "--order", "5", "--check", "system,identities,oracle,enumeration"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("two-catalytic M1: zero"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("rooted maps M1: zero"), std::string::npos) << r.out;
}

TEST(Cli, TriangulationOdeSuite) {
  Result r = run_cli({"solve", "--model", "triangulations", "--order", "7", "--check", "odes,oracle"});
  EXPECT_EQ(r.code, cli::kOk) << r.err << r.out;
  EXPECT_NE(r.out.find("tutte"), std::string::npos);
  EXPECT_NE(r.out.find("forest"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"solve", "--order", "0"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"solve", "--model", "cubes", "--order", "2"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"solve", "--order", "3", "--check", "everything"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"crosscheck", "--model", "triangulations", "--order", "3", "--oracle", "enumeration"}).code,
            cli::kUsage);
  EXPECT_EQ(run_cli({"enumerate", "--emax", "9"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"ode-check", "--ode", "no-such-equation", "--order", "3"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"solve", "--bogus"}).code, cli::kUsage);
}

TEST(Cli, RefusedSpecializationIsAFailure) {
  Result r = run_cli({"solve", "--order", "3", "--specialize", "q=0"});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_NE(r.err.find("annihilates"), std::string::npos) << r.err;
}

TEST(Cli, HelpExitsCleanly) {
  Result r = run_cli({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("crosscheck"), std::string::npos);
}

TEST(Cli, CrosscheckOracles) {
  EXPECT_EQ(run_cli({"crosscheck", "--order", "5", "--oracle", "enumeration"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"crosscheck", "--order", "5", "--oracle", "two-catalytic", "--specialize", "q=3"}).code,
            cli::kOk);
  EXPECT_EQ(run_cli({"crosscheck", "--model", "triangulations", "--order", "6", "--oracle", "tutte-G"}).code,
            cli::kOk);
}

TEST(Cli, EnumerateListsMaps) {
  Result r = run_cli({"enumerate", "--emax", "2"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("rooted maps with 2 edges: 9"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("potts="), std::string::npos);
}

TEST(Cli, OdeCheckAll) {
  Result r = run_cli({"ode-check", "--order", "6"});
  EXPECT_EQ(r.code, cli::kOk) << r.err << r.out;
  for (const auto& name : ode_fixture_names()) EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST(Cli, EnvironmentOrder) {
  ::setenv("POTTS_ORDER", "3", 1);
  Result r = run_cli({"solve", "--model", "maps"});
  ::unsetenv("POTTS_ORDER");
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("solved maps through t^3"), std::string::npos) << r.out;
}

TEST_F(CliFiles, OutputIsDeterministic) {
  for (const char* fmt : {"json", "csv", "text"}) {
    std::string a = path("a.out"), b = path("b.out");
    ASSERT_EQ(run_cli({"solve", "--order", "4", "--format", fmt, "--out", a}).code, cli::kOk);
    ASSERT_EQ(run_cli({"solve", "--order", "4", "--format", fmt, "--pivot", "fewest", "--out", b}).code, cli::kOk);
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_EQ(slurp(a), slurp(b)) << fmt;
  }
}

TEST_F(CliFiles, ReferenceRoundTripAndTamper) {
  std::string ref = path("ref.json");
  ASSERT_EQ(run_cli({"solve", "--order", "5", "--out", ref}).code, cli::kOk);
  Result same = run_cli({"crosscheck", "--order", "5", "--reference", ref});
  EXPECT_EQ(same.code, cli::kOk) << same.out << same.err;

  nlohmann::json j = read_json_file(ref);
  j["main"][4] = j["main"][4].get<std::string>() + " + q";
  std::string bad = path("bad.json");
  write_text_file(bad, j.dump());
  Result r = run_cli({"crosscheck", "--order", "5", "--reference", bad});
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_NE(r.out.find("first differing coefficient: t^4"), std::string::npos) << r.out;

  write_text_file(bad, "{not json");
  EXPECT_EQ(run_cli({"crosscheck", "--order", "5", "--reference", bad}).code, cli::kFailure);
}

TEST_F(CliFiles, TamperedFixtureFails) {
  for (const auto& name : ode_fixture_names()) fs::copy_file(ode_fixture_path(name), dir_ / (name + ".ode"));
  std::string text = slurp(dir_ / "self-dual.ode");
  auto pos = text.rfind('+');
  ASSERT_NE(pos, std::string::npos);
  text[pos] = '-';
  write_text_file((dir_ / "self-dual.ode").string(), text);
  Result r = run_cli({"ode-check", "--model", "maps", "--order", "6", "--ode", "self-dual", "--fixtures", dir_.string()});
  EXPECT_NE(r.code, cli::kOk);
  EXPECT_EQ(run_cli({"ode-check", "--model", "maps", "--order", "6", "--fixtures", dir_.string()}).code,
            cli::kCheckFailed);
}

TEST_F(CliFiles, ConfigFile) {
  std::string cfg = path("run.toml");
  write_text_file(cfg, "[solve]\nmodel = \"triangulations\"\norder = 4\ncheck = [\"system\", \"identities\"]\n");
  Result r = run_cli({"--config", cfg, "solve"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("solved triangulations through w^4"), std::string::npos) << r.out;
  Result over = run_cli({"--config", cfg, "solve", "--order", "3"});
  EXPECT_NE(over.out.find("through w^3"), std::string::npos) << over.out;
}
