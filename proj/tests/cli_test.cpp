// Copyright 2026 The pfg Authors.
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
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pfg/io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string out_path = ::testing::TempDir() + "pfg_cli_out_" + std::to_string(::getpid()) + "_" +
                               std::to_string(counter++);
  const std::string cmd = env + " " + PFG_CLI + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string data(const std::string& name) { return std::string(PFG_DATA_DIR) + "/" + name; }

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

TEST(Cli, Partitions) {
  auto r = run("partitions --n 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 15);
  r = run("partitions --n 5 --shapes");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 7);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "[5]");
  EXPECT_EQ(run("partitions --n 13").code, 64);
  EXPECT_EQ(run("partitions").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
}

TEST(Cli, SizeCapFromEnvironment) {
  EXPECT_EQ(run("partitions --n 6", "PFG_MAX_N=5").code, 64);
  EXPECT_EQ(run("partitions --n 5", "PFG_MAX_N=5").code, 0);
}

TEST(Cli, CheckVerdicts) {
  auto r = run("check " + data("cournot3.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("positive"), std::string::npos);
  r = run("check --format json " + data("negfam3.json"));
  EXPECT_EQ(r.code, 0);
  auto j = pfg::io::Json::parse(r.out);
  EXPECT_EQ(j["externalities"]["sign"], "negative");
  EXPECT_EQ(j["efficient"]["holds"], true);
  EXPECT_EQ(run("check --require-yi " + data("negfam3.json")).code, 1);
  EXPECT_EQ(run("check " + data("cournot3_missing_shape.json")).code, 65);
  EXPECT_EQ(run("check " + data("cournot3_bad_rational.json")).code, 65);
  EXPECT_EQ(run("check " + data("does_not_exist.json")).code, 65);
}

TEST(Cli, Threshold) {
  auto r = run("threshold " + data("cournot3.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3/7\n");
  r = run("threshold " + data("negfam3.json"));
  EXPECT_EQ(r.out, "AnyBelief\n");
  r = run("threshold --format json " + data("cournot3.json"));
  EXPECT_EQ(pfg::io::Json::parse(r.out)["p"], "3/7");
}

TEST(Cli, Core) {
  auto r = run("core --lp --format json " + data("cournot3.json") + " --beliefs " + data("gamma3.json"));
  EXPECT_EQ(r.code, 0);
  auto j = pfg::io::Json::parse(r.out);
  EXPECT_EQ(j["equal_split_in_core"], true);
  EXPECT_EQ(j["lp"]["nonempty"], true);
  EXPECT_EQ(j["lp"]["certificate"], pfg::io::Json::array({"1/12", "1/12", "1/12"}));

  r = run("core --lp --format json " + data("cournot3.json") + " --beliefs " + data("half3_s1.json") + " " +
          data("pair3_s2.json"));
  EXPECT_EQ(r.code, 1);
  j = pfg::io::Json::parse(r.out);
  EXPECT_EQ(j["blocking_size"], 1);
  EXPECT_EQ(j["vh"][0], "25/288");
  EXPECT_EQ(j["lp"]["nonempty"], false);

  EXPECT_EQ(run("core " + data("cournot3.json") + " --beliefs " + data("half3_s1.json")).code, 64);
}

TEST(Cli, GenerateRoundTripsThroughCheck) {
  const std::string path = ::testing::TempDir() + "pfg_cli_cournot5_" + std::to_string(::getpid()) + ".json";
  EXPECT_EQ(run("generate --family cournot --n 5 -o " + path).code, 0);
  EXPECT_EQ(run("check --require-yi " + path).code, 0);
  auto r = run("generate --family random --sign negative --n 4 --seed 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, run("generate --family random --sign negative --n 4 --seed 3").out);
  EXPECT_EQ(run("generate --family random --n 4").code, 64);
  r = run("generate --n 4 --belief delta --s 1");
  EXPECT_EQ(pfg::io::Json::parse(r.out)["probs"][0]["outsiders"], pfg::io::Json::array({3}));
}

TEST(Cli, VerifyExitCodesAndFormats) {
  auto r = run("verify --family cournot --mode prop1 --n-max 5 --samples 3 --seed 1 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("n,s,sample,margin_num,margin_den,verdict\n", 0), 0u);
  EXPECT_EQ(lines(r.out), 1 + 3 * (2 + 3 + 4));
  r = run("verify --family cournot --mode prop2 --n-max 5 --samples 3 --seed 1");
  EXPECT_EQ(r.code, 2);
  r = run("verify --family negfam --mode mirror --n-max 5 --samples 0 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(pfg::io::Json::parse(r.out)["summary"]["levels_checked"], 0);
  EXPECT_EQ(run("verify --family cournot --mode prop1 --n-max 5 --samples 2").code, 64);
  EXPECT_EQ(run("verify --family cournot --mode prop1 --n-max 11 --samples 1 --seed 1").code, 64);
  EXPECT_EQ(run("verify --family negfam --eps 2 --mode mirror --n-max 5 --samples 1 --seed 1").code, 64);
}

}  // namespace
