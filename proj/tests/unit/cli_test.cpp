// Copyright 2026 The qedqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Proc {
  int code = -1;
  std::string out;
};

Proc run(const std::string& args) {
  std::string cmd = std::string(QCA_BINARY) + " " + args + " 2>&1";
  Proc p;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
  int status = pclose(f);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qca_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& name, const std::string& body) {
    fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream is(path);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') quoted = !quoted;
      else if (c == ',' && !quoted) row.push_back(std::exchange(cell, {}));
      else cell += c;
    }
    row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kSmall =
    "dim = 2\n"
    "lattice = 2x2\n"
    "k = 2\n"
    "mass = 0.3\n"
    "initial_state = dirac_sea + pair@0,0\n"
    "observables = occ[0,0;0], E[0,0;mu], Eenergy, P[0,0;mu,nu]\n";

TEST_F(CliTest, RunWritesOneRowPerStep) {
  std::string cfg = write_config("a.cfg", std::string(kSmall) + "steps = 10\n");
  Proc p = run("run " + cfg + " -o " + path("a.csv"));
  ASSERT_EQ(p.code, 0) << p.out;
  auto rows = read_csv(path("a.csv"));
  ASSERT_EQ(rows.size(), 12u);
  std::vector<std::string> header{"step", "t", "occ[0,0;0]", "E[0,0;mu]", "Eenergy", "ReP[0,0;mu,nu]", "ImP[0,0;mu,nu]"};
  EXPECT_EQ(rows[0], header);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), header.size());
    EXPECT_EQ(std::stoi(rows[i][0]), static_cast<int>(i - 1));
  }
  // Locked mode with k = 2, g_E = 1: epsilon = sqrt(2 pi).
  EXPECT_NEAR(std::stod(rows[3][1]), 2 * std::sqrt(2 * M_PI), 1e-12);
}

TEST_F(CliTest, ZeroStepsWritesInitialRowOnly) {
  std::string cfg = write_config("z.cfg", std::string(kSmall) + "steps = 0\n");
  Proc p = run("run " + cfg + " -o " + path("z.csv"));
  ASSERT_EQ(p.code, 0) << p.out;
  auto rows = read_csv(path("z.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(std::stod(rows[1][2]), 1.0);
}

TEST_F(CliTest, SnapshotsEveryN) {
  std::string cfg = write_config("s.cfg", std::string(kSmall) + "steps = 4\nsnapshot_every = 2\n");
  Proc p = run("run " + cfg + " -o " + path("s.csv") + " --snapshot-prefix " + path("snap"));
  ASSERT_EQ(p.code, 0) << p.out;
  for (int s : {0, 2, 4}) EXPECT_TRUE(fs::exists(path("snap_" + std::to_string(s) + ".snap"))) << s;
  EXPECT_FALSE(fs::exists(path("snap_1.snap")));
  EXPECT_FALSE(fs::exists(path("snap_3.snap")));
}

TEST_F(CliTest, UnknownKeyIsNamed) {
  std::string cfg = write_config("u.cfg", std::string(kSmall) + "colour = red\n");
  Proc p = run("run " + cfg + " -o " + path("u.csv"));
  EXPECT_NE(p.code, 0);
  EXPECT_NE(p.out.find("colour"), std::string::npos) << p.out;
}

TEST_F(CliTest, BadValuesNameTheirKey) {
  struct Case {
    std::string line, key;
  };
  for (const Case& c : std::vector<Case>{{"k = 3\n", "k"},
                                         {"dim = 4\n", "dim"},
                                         {"magnetic_formulation = spline\n", "magnetic_formulation"},
                                         {"steps = -1\n", "steps"}}) {
    std::string cfg = write_config("b.cfg", std::string(kSmall) + "steps = 1\n" + c.line);
    if (c.key == "steps") cfg = write_config("b.cfg", std::string(kSmall) + c.line);
    Proc p = run("run " + cfg + " -o " + path("b.csv"));
    EXPECT_EQ(p.code, 2) << c.line << p.out;
    EXPECT_NE(p.out.find("'" + c.key + "'"), std::string::npos) << c.line << p.out;
  }
}

TEST_F(CliTest, InconsistentLockedEpsilonRejected) {
  std::string cfg = write_config("e.cfg", std::string(kSmall) + "steps = 1\nepsilon = 0.3\n");
  Proc p = run("run " + cfg + " -o " + path("e.csv"));
  EXPECT_EQ(p.code, 2);
  EXPECT_NE(p.out.find("'epsilon'"), std::string::npos) << p.out;

  std::string ok = write_config("e2.cfg", std::string(kSmall) + "steps = 1\nepsilon = 2.5066282746310002\n");
  EXPECT_EQ(run("run " + ok + " -o " + path("e2.csv")).code, 0);
}

TEST_F(CliTest, FreeModeRequiresEpsilon) {
  std::string cfg = write_config("f.cfg", std::string(kSmall) + "steps = 1\ncoupling_mode = free\n");
  Proc p = run("run " + cfg + " -o " + path("f.csv"));
  EXPECT_EQ(p.code, 2);
  EXPECT_NE(p.out.find("'epsilon'"), std::string::npos) << p.out;
}

// With both couplings off only the fermionic layers act, and a single particle moves at most
// one site per step in L-infinity distance.
TEST_F(CliTest, UncoupledParticleStaysInCone) {
  const int steps = 2;
  std::string cfg = write_config("c.cfg",
                                 "dim = 2\nlattice = 7x7\nk = 2\nmass = 0.4\ncoupling_mode = free\nepsilon = 0.7\n"
                                 "g_electric = 0\ng_magnetic = 0\n"
                                 "initial_state = vacuum + particle@3,3;0\nobservables = occ[*]\nsteps = " +
                                     std::to_string(steps) + "\n");
  Proc p = run("run " + cfg + " -o " + path("c.csv"));
  ASSERT_EQ(p.code, 0) << p.out;
  auto rows = read_csv(path("c.csv"));
  ASSERT_EQ(rows.size(), static_cast<std::size_t>(steps + 2));
  const auto& header = rows[0];
  bool spread = false;
  for (int t = 0; t <= steps; ++t) {
    double total = 0;
    for (std::size_t c = 2; c < header.size(); ++c) {
      int x = 0, y = 0;
      ASSERT_EQ(std::sscanf(header[c].c_str(), "occ[%d,%d;", &x, &y), 2) << header[c];
      int dx = std::abs(x - 3), dy = std::abs(y - 3);
      double v = std::stod(rows[t + 1][c]);
      total += v;
      if (std::max(dx, dy) > t) EXPECT_NEAR(v, 0.0, 1e-14) << "t=" << t << " " << header[c];
      else if (t > 0 && std::max(dx, dy) == t && v > 1e-6) spread = true;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  EXPECT_TRUE(spread);
}

TEST_F(CliTest, IdenticalRunsAreBitIdentical) {
  std::string cfg = write_config("d.cfg", std::string(kSmall) + "steps = 6\n");
  ASSERT_EQ(run("run " + cfg + " -o " + path("d1.csv")).code, 0);
  ASSERT_EQ(run("run " + cfg + " -o " + path("d2.csv")).code, 0);
  EXPECT_EQ(slurp(path("d1.csv")), slurp(path("d2.csv")));

  std::string k4 = write_config("d4.cfg",
                                "dim = 2\nlattice = 2x2\nk = 4\nmass = 0.3\nsteps = 4\n"
                                "initial_state = dirac_sea + pair@0,0 + loop@1,1;mu,nu\nobservables = occ[*], E[*], Eenergy, P[*]\n");
  ASSERT_EQ(run("run " + k4 + " -o " + path("d3.csv")).code, 0);
  ASSERT_EQ(run("run " + k4 + " -o " + path("d4.csv")).code, 0);
  EXPECT_EQ(slurp(path("d3.csv")), slurp(path("d4.csv")));
}

TEST_F(CliTest, VerifyExchangePasses) {
  Proc p = run("verify exchange --json " + path("v.json"));
  EXPECT_EQ(p.code, 0) << p.out;
  auto j = nlohmann::json::parse(slurp(path("v.json")));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["suite"], "exchange");
  EXPECT_EQ(j[0]["status"], "pass");
  EXPECT_FALSE(j[0]["checks"].empty());
}

TEST_F(CliTest, VerifyRejectsUnknownSuite) { EXPECT_NE(run("verify bogus").code, 0); }

TEST_F(CliTest, ConvergenceReportsOrder) {
  Proc p = run("convergence --k 0.3,0.4 --mass 0.5 --eps 0.1,0.05,0.025");
  ASSERT_EQ(p.code, 0) << p.out;
  auto pos = p.out.find("order,");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(p.out.substr(pos + 6)), 2.0, 0.1);
  EXPECT_NE(run("convergence --k 0.3,0.4 --eps 0.1,0.05").code, 0);
}

}  // namespace
