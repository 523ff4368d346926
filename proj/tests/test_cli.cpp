#include "pathtrans/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using pathtrans::run_cli;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pathtrans_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(std::vector<std::string> args, const fs::path& out_dir = {}) {
    args.insert(args.begin(), "pathtrans");
    args.push_back("--output-dir");
    args.push_back((out_dir.empty() ? dir_ : out_dir).string());
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
  }

  std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ListGeometries) {
  const Result r = run({"list-geometries"});
  EXPECT_EQ(r.status, 0);
  for (const char* id : {"flat", "sphere", "evolution", "nonlinear"}) EXPECT_NE(r.out.find(id), std::string::npos);
}

TEST_F(Cli, CheckLawsFlatPassesWithZeroResiduals) {
  const Result r = run({"check-laws", "--geometry", "flat", "--samples", "10"});
  EXPECT_EQ(r.status, 0) << r.err;
  const std::string csv = slurp(dir_ / "laws.csv");
  EXPECT_EQ(csv.rfind("law_id,samples,max_residual,tolerance,passed,seed\n", 0), 0u);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",0,"), std::string::npos) << line;
    EXPECT_NE(line.find(",true,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 10);
  EXPECT_TRUE(fs::exists(dir_ / "laws.txt"));
}

TEST_F(Cli, CheckLawsExitReflectsFailures) {
  const Result r = run({"check-laws", "--geometry", "evolution", "--samples", "5"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(slurp(dir_ / "laws.csv").find(",false,"), std::string::npos);
}

TEST_F(Cli, FactorizeEvolutionFails) {
  const Result r = run({"factorize", "--geometry", "evolution"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("false"), std::string::npos);
  EXPECT_EQ(r.out.find(",true"), std::string::npos);
}

TEST_F(Cli, FactorizeSpherePasses) {
  const Result r = run({"factorize", "--geometry", "sphere", "--points", "3"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(slurp(dir_ / "factorization.csv"), r.out);
}

TEST_F(Cli, HolonomyLatitude) {
  const Result r = run({"holonomy", "--geometry", "sphere", "--loop", "latitude:pi/3"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "loop_param,angle,distance_to_identity\n1.04719755,3.14159265,2\n");
}

TEST_F(Cli, HolonomySweep) {
  const Result r = run({"holonomy", "--geometry", "sphere", "--loop", "latitude:1", "--sweep", "0.5,1.5,3"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  EXPECT_NE(r.out.find("\n0.5,"), std::string::npos);
  EXPECT_NE(r.out.find("\n1.5,"), std::string::npos);
}

TEST_F(Cli, TransportWritesVectorAndMatrix) {
  const Result r = run({"transport", "--geometry", "flat", "--path", "segment from=0,0 to=1,1", "--u", "2,3"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "component,value\n0,2\n1,3\n");
  EXPECT_TRUE(fs::exists(dir_ / "transport.csv"));
}

TEST_F(Cli, RoundtripSphere) {
  const Result r = run({"roundtrip", "--geometry", "sphere", "--samples", "20", "--points", "4"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("roundtrip-transport-parallel"), std::string::npos);
  EXPECT_NE(r.out.find("roundtrip-connection"), std::string::npos);
}

TEST_F(Cli, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"check-laws", "--geometry", "torus"}).status, 2);
  EXPECT_EQ(run({"check-laws"}).status, 2);
  EXPECT_EQ(run({"transport", "--geometry", "flat"}).status, 2);
  EXPECT_EQ(run({"transport", "--geometry", "sphere", "--path", "segment from=0,0 to=1,1"}).status, 2);
  EXPECT_EQ(run({"holonomy", "--geometry", "sphere", "--loop", "latitude:pi/3", "--step", "0"}).status, 2);
  EXPECT_EQ(run({"holonomy", "--geometry", "sphere", "--loop", "segment:1,0:1.2,0"}).status, 2);
  EXPECT_EQ(run({"check-laws", "--geometry-file", (dir_ / "missing.geom").string()}).status, 2);
  EXPECT_EQ(run({"factorize", "--geometry", "nonlinear"}).status, 2);
}

TEST_F(Cli, ConfigFileWithCommandLineOverride) {
  const fs::path cfg = dir_ / "run.ini";
  {
    std::ofstream out(cfg);
    out << "command=holonomy\ngeometry=sphere\nloop=latitude:1\nsweep=0.5,1.5,3\n";
  }
  const Result from_file = run({"--config", cfg.string()});
  EXPECT_EQ(from_file.status, 0) << from_file.err;
  EXPECT_EQ(std::count(from_file.out.begin(), from_file.out.end(), '\n'), 4);
  const Result overridden = run({"--config", cfg.string(), "--sweep", "1,1,1"});
  EXPECT_EQ(overridden.status, 0) << overridden.err;
  EXPECT_EQ(std::count(overridden.out.begin(), overridden.out.end(), '\n'), 2);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const fs::path env_dir = dir_ / "from_env";
  ::setenv(pathtrans::kOutputDirEnv, env_dir.string().c_str(), 1);
  std::vector<const char*> argv{"pathtrans", "factorize", "--geometry", "flat", "--points", "2"};
  std::ostringstream out, err;
  EXPECT_EQ(run_cli(static_cast<int>(argv.size()), argv.data(), out, err), 0) << err.str();
  ::unsetenv(pathtrans::kOutputDirEnv);
  EXPECT_TRUE(fs::exists(env_dir / "factorization.csv"));
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  for (const fs::path& d : {a, b}) {
    EXPECT_EQ(run({"check-laws", "--geometry", "sphere", "--samples", "8", "--seed", "42"}, d).status, 0);
    EXPECT_EQ(run({"factorize", "--geometry", "sphere", "--points", "3", "--seed", "42"}, d).status, 0);
  }
  for (const char* f : {"laws.csv", "laws.txt", "factorization.csv"}) {
    EXPECT_FALSE(slurp(a / f).empty());
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST_F(Cli, BinaryExitCodes) {
  const std::string bin = PATHTRANS_CLI_BINARY;
  const std::string quiet = " --output-dir " + dir_.string() + " > /dev/null 2>&1";
  const auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + quiet).c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("check-laws --geometry flat --samples 5"), 0);
  EXPECT_EQ(status("factorize --geometry evolution"), 1);
  EXPECT_EQ(status("check-laws --geometry nowhere"), 2);
  EXPECT_EQ(status("--help"), 0);
}
