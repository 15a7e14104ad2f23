// Copyright 2026 The entswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gtest/gtest.h"

#include "entswap/io.hpp"

using namespace entswap;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("entswap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string write_state(const std::string& name, const Matrix4c<double>& m) {
    return write(name, matrix_to_json(m).dump());
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, swap_phi_plus_pair) {
  const auto phi = write_state("phi.json", bell_state(BellLabel::PhiPlus).matrix());
  ASSERT_EQ(run({"swap", phi, phi, "--outcome", "psi-"}), cli::kExitOk) << err_.str();
  const json j = json::parse(out_.str());
  EXPECT_EQ(j["outcome"], "psi-");
  EXPECT_NEAR(j["probability"].get<double>(), 0.25, 1e-15);
  EXPECT_NEAR(j["concurrence"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["rank"], 1);
  const auto state = DensityMatrix<double>(matrix_from_json(j["state"]));
  EXPECT_LT(trace_distance(state, bell_state(BellLabel::PsiMinus)), 1e-12);
}

TEST_F(CliTest, swap_malformed_json) {
  const auto bad = write("bad.json", "{\"basis\": ");
  EXPECT_EQ(run({"swap", bad, bad}), cli::kExitUsage);
  EXPECT_NE(err_.str().find("parse error"), std::string::npos);
}

TEST_F(CliTest, swap_non_psd_names_eigenvalue) {
  Matrix4c<double> m = Matrix4c<double>::Zero();
  m(0, 0) = 1.2;
  m(3, 3) = -0.2;
  const auto f = write_state("neg.json", m);
  EXPECT_EQ(run({"swap", f, f}), cli::kExitUsage);
  EXPECT_NE(err_.str().find("eigenvalue"), std::string::npos) << err_.str();
}

TEST_F(CliTest, swap_impossible_outcome) {
  Matrix4c<double> m = Matrix4c<double>::Zero();
  m(0, 0) = 1;
  const auto f = write_state("hh.json", m);
  EXPECT_EQ(run({"swap", f, f, "--outcome", "psi+"}), cli::kExitUsage);
  EXPECT_NE(err_.str().find("impossible outcome"), std::string::npos);
}

TEST_F(CliTest, experiment_writes_deterministic_files) {
  const auto a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
  ASSERT_EQ(run({"experiment", "conserve", "--samples", "600", "--seed", "7", "--out", a}),
            cli::kExitOk)
      << err_.str();
  ASSERT_EQ(run({"experiment", "conserve", "--samples", "600", "--seed", "7", "--workers", "3",
                 "--out", b}),
            cli::kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a).rfind(kCsvHeader, 0), 0u);
  const json summary = json::parse(slurp(dir_ / "a.summary.json"));
  EXPECT_EQ(summary["violations_upper"], 0);
  EXPECT_EQ(summary["seed"], 7);
}

TEST_F(CliTest, experiment_json_format) {
  const auto p = (dir_ / "r.json").string();
  ASSERT_EQ(run({"experiment", "rank2-selfswap", "--format", "json", "--out", p}), cli::kExitOk);
  const json records = json::parse(slurp(p));
  EXPECT_EQ(records.size(), 99u * 4);
}

TEST_F(CliTest, experiment_usage_errors) {
  EXPECT_EQ(run({"experiment", "nonsense"}), cli::kExitUsage);
  EXPECT_EQ(run({"experiment", "conserve", "--samples", "0"}), cli::kExitUsage);
  EXPECT_EQ(run({"experiment", "conserve", "--ensemble", "wishart", "--samples", "5", "--out",
                 (dir_ / "x.csv").string()}),
            cli::kExitUsage);
  EXPECT_EQ(run({"experiment", "conserve", "--samples", "5", "--out",
                 (dir_ / "missing" / "x.csv").string()}),
            cli::kExitUsage);
  EXPECT_EQ(run({}), cli::kExitUsage);
}

TEST_F(CliTest, oracle_check_files) {
  const auto phi = write_state("phi.json", bell_state(BellLabel::PhiPlus).matrix());
  ASSERT_EQ(run({"oracle-check", phi, phi}), cli::kExitOk) << err_.str();
  const json j = json::parse(out_.str());
  EXPECT_TRUE(j["agree"].get<bool>());
  EXPECT_LT(j["trace_distance"].get<double>(), 1e-10);
  EXPECT_EQ(run({"oracle-check", phi, phi, "--eta", "0.3"}), cli::kExitOk);
  EXPECT_FALSE(json::parse(out_.str()).contains("agree"));
  EXPECT_EQ(run({"oracle-check", phi, phi, "--eta", "1.0"}), cli::kExitUsage);
}

TEST_F(CliTest, oracle_check_random) {
  EXPECT_EQ(run({"oracle-check", "--samples", "50"}), cli::kExitOk) << err_.str();
  EXPECT_EQ(json::parse(out_.str())["violations_upper"], 0);
}

TEST_F(CliTest, sample_csv_and_json) {
  ASSERT_EQ(run({"sample", "induced-2", "--samples", "5", "--seed", "3"}), cli::kExitOk);
  std::istringstream lines(out_.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "sample,concurrence,rank,purity");
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_NE(line.find(",2,"), std::string::npos) << line;
  }
  EXPECT_EQ(count, 5);
  ASSERT_EQ(run({"sample", "belldiag", "--samples", "3", "--format", "json"}), cli::kExitOk);
  const json states = json::parse(out_.str());
  ASSERT_EQ(states.size(), 3u);
  EXPECT_NO_THROW(DensityMatrix<double>(matrix_from_json(states[0])));
  EXPECT_EQ(run({"sample", "wishart"}), cli::kExitUsage);
}

TEST_F(CliTest, seed_from_environment) {
  ::setenv("ENTSWAP_SEED", "99", 1);
  EXPECT_EQ(cli::default_seed(), 99u);
  ASSERT_EQ(run({"sample", "bures", "--samples", "2"}), cli::kExitOk);
  const std::string from_env = out_.str();
  ASSERT_EQ(run({"sample", "bures", "--samples", "2", "--seed", "99"}), cli::kExitOk);
  EXPECT_EQ(out_.str(), from_env);
  ::setenv("ENTSWAP_SEED", "abc", 1);
  EXPECT_EQ(cli::default_seed(), 42u);
  ::unsetenv("ENTSWAP_SEED");
  EXPECT_EQ(cli::default_seed(), 42u);
}
