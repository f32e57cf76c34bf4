// Copyright 2026 The quantgame Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "qg/fixtures.hpp"
#include "qg/io.hpp"
#include "support.hpp"

namespace qg {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qgame_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    write_file_atomic(path(name), text);
    return path(name);
  }

 private:
  std::filesystem::path dir_;
};

TEST_F(Cli, SolveAvgRechargeMemlb) {
  Outcome yes = cli({"solve", "--objective", "avg-recharge", "--cap", "4", "--threshold", "2", "MEMLB"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_NE(yes.out.find("winner=Player0"), std::string::npos);
  Outcome no = cli({"solve", "--objective", "avg-recharge", "--cap", "4", "--threshold", "15/8", "@MEMLB"});
  EXPECT_EQ(no.code, 1);
  EXPECT_NE(no.out.find("winner=Player1"), std::string::npos);
}

TEST_F(Cli, SolveMeanPayoffPrintsValue) {
  Outcome r = cli({"solve", "--objective", "mean-payoff", "--threshold", "0", "INTRO"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("value="), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({"solve", "--objective", "parity3", "INTRO"}).code, 2);
  EXPECT_EQ(cli({"solve", "--objective", "avg-recharge", "MEMLB"}).code, 2);
  EXPECT_EQ(cli({"solve", "--objective", "nonsense", "INTRO"}).code, 2);
  EXPECT_EQ(cli({"solve", "--objective", "recharge", "--cap", "2", "INTRO"}).code, 2);
  EXPECT_EQ(cli({"solve", "--objective", "energy-l", path("missing.arena")}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  Outcome bad = cli({"solve", "--objective", "energy-l", write("bad.arena", "arena\nvertex a p0\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("error:"), std::string::npos);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(Cli, ParityWithColorFile) {
  std::string arena = write("p.arena", "arena\nvertex a p0\nvertex b p1\ninit a\nedge a a 0\nedge a b 0\nedge b b 0\n");
  EXPECT_EQ(cli({"solve", "--objective", "parity3", "--color-file", write("c.txt", "color a 2\ncolor b 1\n"), arena}).code, 0);
  EXPECT_EQ(cli({"solve", "--objective", "parity3", "--color-file", write("d.txt", "color a 1\ncolor b 1\n"), arena}).code, 1);
}

TEST_F(Cli, ExistsCommands) {
  Outcome cap = cli({"exists-cap", "TRADEOFF"});
  EXPECT_EQ(cap.code, 0);
  EXPECT_NE(cap.out.find("result=YES cap="), std::string::npos);
  std::string neg = write("neg.arena", "arena\nvertex a p0\nvertex b p0\ninit a\nedge a a -1\nedge b a R\n");
  Outcome no = cli({"exists-cap", neg});
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "result=NO\n");
  Outcome th = cli({"exists-threshold", "INTRO"});
  EXPECT_EQ(th.code, 0);
  EXPECT_EQ(th.out, "result=YES cap=5 threshold=5\n");
  Outcome lu = cli({"exists-cap-lu", "--cap-max", "16", "INTRO"});
  EXPECT_EQ(lu.out, "result=YES cap=5\n");
  std::string up = write("up.arena", "arena\nvertex a p0\ninit a\nedge a a 1\n");
  Outcome bounded = cli({"exists-cap-lu", "--cap-max", "9", up});
  EXPECT_EQ(bounded.code, 1);
  EXPECT_EQ(bounded.out, "result=NO-UP-TO-BOUND bound=9\n");
  EXPECT_EQ(cli({"exists-cap", "INTRO"}).code, 2);
}

TEST_F(Cli, SolverStrategiesVerify) {
  std::string strat = path("s.strategy");
  ASSERT_EQ(cli({"solve", "--objective", "avg-recharge", "--cap", "4", "--threshold", "2", "--strategy-out", strat,
                 "MEMLB"})
                .code,
            0);
  Outcome v = cli({"verify-strategy", "--objective", "avg-recharge", "--cap", "4", "--threshold", "2", "--strategy", strat,
               "MEMLB"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("verdict=ACCEPTED"), std::string::npos);
  Outcome tighter = cli({"verify-strategy", "--objective", "avg-recharge", "--cap", "4", "--threshold", "1", "--strategy",
                     strat, "MEMLB"});
  EXPECT_EQ(tighter.code, 1);
  EXPECT_NE(tighter.out.find("verdict=REJECTED"), std::string::npos);
  EXPECT_NE(tighter.out.find("witness="), std::string::npos);

  std::string lu = path("lu.strategy");
  std::string cert = path("lu.cert");
  ASSERT_EQ(cli({"solve", "--objective", "energy-lu", "--cap", "5", "--emit-strategy", lu, "--emit-certificate", cert,
                 "INTRO"})
                .code,
            0);
  EXPECT_TRUE(std::filesystem::exists(cert));
  EXPECT_EQ(cli({"verify-strategy", "--objective", "energy-lu", "--cap", "5", "--strategy", lu, "INTRO"}).code, 0);
  std::string cap_strat = path("cap.strategy");
  ASSERT_EQ(cli({"exists-cap", "--strategy-out", cap_strat, "CYCLE(3,2)"}).code, 0);
  EXPECT_EQ(cli({"verify-strategy", "--objective", "recharge", "--cap", "4", "--strategy", cap_strat, "CYCLE(3,2)"}).code,
            0);
}

TEST_F(Cli, EvalLasso) {
  Outcome r = cli({"eval-lasso", "--lasso", "prefix: v0 ; cycle: v2 v0 v1", "INTRO"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "value=4/1\n");
  Outcome s = cli({"eval-lasso", "--objective", "avg-recharge", "--cap", "3", "--threshold", "3/5", "--lasso",
               "prefix: ; cycle: v0 v3 v4 v5 v0", "TRADEOFF"});
  EXPECT_EQ(s.out, "value=3/5\nsatisfied=yes\n");
  EXPECT_EQ(cli({"eval-lasso", "--lasso", "prefix: v0 ; cycle: v1", "INTRO"}).code, 2);
}

TEST_F(Cli, ReduceThenSolve) {
  std::string red = path("cycle.parity");
  ASSERT_EQ(cli({"reduce", "--kind", "exists-cap-parity", "--out", red, "CYCLE(3,1)"}).code, 0);
  Outcome r = cli({"solve", "--objective", "parity3", red});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("winner=Player0"), std::string::npos);
  std::string text = read_file(red);
  EXPECT_EQ(text.rfind("# ", 0), 0u);
  EXPECT_NE(text.find("\nbackmap\n"), std::string::npos);

  std::string mp = path("memlb.mp");
  ASSERT_EQ(cli({"reduce", "--kind", "avg-recharge-mp", "--cap", "4", "--threshold", "2", "--out", mp, "MEMLB"}).code, 0);
  Outcome m = cli({"solve", "--objective", "mean-payoff", "--threshold", "2", mp});
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(cli({"solve", "--objective", "mean-payoff", "--threshold", "15/8", mp}).code, 1);

  Outcome fig4 = cli({"reduce", "--kind", "fig4", "--budget", "2", write("cd.arena", "arena\nvertex s p0\nvertex t p1\n"
                                                                               "vertex sink p1\ninit s\nedge s t -1\n"
                                                                               "edge t s 0\nedge s sink 0\n"
                                                                               "edge sink sink 0\n")});
  EXPECT_EQ(fig4.code, 0);
  EXPECT_NE(fig4.out.find("g0"), std::string::npos);
  EXPECT_EQ(cli({"reduce", "--kind", "nope", "MEMLB"}).code, 2);
}

TEST_F(Cli, SweepsAreDeterministic) {
  std::string a = path("a.csv"), b = path("b.csv");
  ASSERT_EQ(cli({"sweep-cap", "--from", "1", "--to", "7", "--jobs", "1", "--out", a, "TRADEOFF"}).code, 0);
  ASSERT_EQ(cli({"sweep-cap", "--from", "1", "--to", "7", "--jobs", "4", "--out", b, "TRADEOFF"}).code, 0);
  EXPECT_EQ(read_file(a), read_file(b));
  EXPECT_EQ(read_file(a),
            "cap,numerator,denominator,status\n1,3,4,OK\n2,9,7,OK\n3,3,5,OK\n4,5,4,OK\n5,20,11,OK\n6,2,1,OK\n"
            "7,29,12,OK\n");
  Outcome mem = cli({"sweep-memory", "--cap", "4", "--from", "1", "--to", "4", "MEMLB"});
  EXPECT_EQ(mem.code, 0);
  EXPECT_EQ(mem.out, "n,numerator,denominator,status\n1,7,2,OK\n2,3,1,OK\n3,5,2,OK\n4,2,1,OK\n");
  Outcome plot = cli({"sweep-cap", "--from", "1", "--to", "3", "--ascii-plot", "TRADEOFF"});
  EXPECT_NE(plot.out.find("9/7"), std::string::npos);
  EXPECT_EQ(cli({"sweep-memory", "--cap", "4", "--from", "1", "--to", "2", "INTRO"}).code, 2);
}

TEST_F(Cli, GenIsSeeded) {
  Outcome a = cli({"gen", "--seed", "5", "--vertices", "4"});
  Outcome b = cli({"gen", "--seed", "5", "--vertices", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NO_THROW(parse_arena(a.out));
  Outcome r = cli({"gen", "--seed", "5", "--recharge"});
  EXPECT_TRUE(parse_arena(r.out).is_recharge_mode());
  Outcome c = cli({"gen", "--seed", "3", "--countdown"});
  EXPECT_EQ(c.code, 0);
  std::string file = write("cd.arena", c.out);
  EXPECT_NE(c.out.find("budget"), std::string::npos);
  Outcome solved = cli({"solve", "--objective", "countdown", "--budget", "4", file});
  EXPECT_TRUE(solved.code == 0 || solved.code == 1);
}

}  // namespace
}  // namespace qg
