// Copyright 2026 The accentdl Authors.
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

// Runs the command-line tool as a subprocess and checks outputs and exit codes.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  accentdl::testing::TempDir dir;

  Outcome run(const std::string& args, const std::string& stdin_text = "") {
    const std::string in = dir.file("stdin.txt", stdin_text);
    const std::string out = dir.path("stdout.txt");
    const std::string err = dir.path("stderr.txt");
    const std::string cmd = std::string("'") + ACCENTDL_CLI_PATH + "' " + args + " <'" + in +
                            "' >'" + out + "' 2>'" + err + "'";
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string corpus() {
    std::string text;
    for (int i = 0; i < 30; ++i) text += "nous longeons la côte ouest du pays\n";
    for (int i = 0; i < 20; ++i) text += "il reste de ce côté gauche de la rue\n";
    return dir.file("corpus.txt", text);
  }

  std::string model() {
    const std::string path = dir.path("m.model");
    const Outcome r = run("train '" + corpus() + "' -o '" + path + "'");
    EXPECT_EQ(r.code, 0) << r.err;
    return path;
  }
};

TEST_F(CliTest, TrainWritesModelAndSummary) {
  const std::string path = dir.path("m.model");
  const Outcome r = run("train '" + corpus() + "' -o '" + path + "' -k 5 --alpha 0.25");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ambiguous keys: 1"), std::string::npos);
  EXPECT_NE(r.out.find("alpha: 0.25"), std::string::npos);
  EXPECT_NE(r.out.find("(k=5)"), std::string::npos);
  EXPECT_TRUE(slurp(path).starts_with("accentdl-model\t1\n"));
}

TEST_F(CliTest, RestoreFromStdinAndFile) {
  const std::string m = model();
  Outcome r = run("restore -m '" + m + "'", "ce cote gauche\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "ce côté gauche\n");
  const std::string in = dir.file("in.txt", "La cote ouest");
  const std::string out = dir.path("out.txt");
  r = run("restore -m '" + m + "' '" + in + "' -o '" + out + "' --trace");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), "La côte ouest");
  EXPECT_TRUE(r.err.starts_with("cote\t")) << r.err;
}

TEST_F(CliTest, InspectPrintsList) {
  const std::string m = model();
  Outcome r = run("inspect -m '" + m + "' côte");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("cote: côte (30) côté (20)\nLogL")) << r.out;
  EXPECT_NE(r.out.find("DEFAULT"), std::string::npos);
  r = run("inspect -m '" + m + "' cotte");
  EXPECT_EQ(r.code, 6);
  EXPECT_NE(r.err.find("nearest keys: cote"), std::string::npos) << r.err;
}

TEST_F(CliTest, SynthAndEval) {
  const std::string text = dir.path("synth.txt");
  const std::string planted = dir.path("planted.tsv");
  Outcome r = run("synth --occurrences 600 --keys 3 --seed 4 -o '" + text + "' --planted '" +
              planted + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string keys = slurp(planted);
  EXPECT_EQ(std::count(keys.begin(), keys.end(), '\n'), 3);
  const std::string report = dir.path("report.tsv");
  r = run("eval '" + text + "' --language es --folds 3 -k 10 --compare --report '" +
          report + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ambiguous tokens"), std::string::npos);
  EXPECT_NE(r.out.find("Sign test"), std::string::npos);
  const std::string tsv = slurp(report);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 3) << tsv;
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
  const std::string cfg = dir.file("cfg.toml", "[train]\nwindow = 6\n");
  const std::string path = dir.path("m.model");
  const Outcome r = run("--config '" + cfg + "' train '" + corpus() + "' -o '" + path + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("(k=6)"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExitCodes) {
  const std::string c = corpus();
  const std::string out = dir.path("x.model");
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("train '" + c + "'").code, 2);
  EXPECT_EQ(run("train '" + c + "' -o '" + out + "' --alpha 0").code, 2);
  EXPECT_EQ(run("train '" + c + "' -o '" + out + "' --alpha abc").code, 2);
  EXPECT_EQ(run("train '" + c + "' -o '" + out + "' --beta-gamma 0.5,0.6").code, 2);
  EXPECT_EQ(run("eval '" + c + "' --folds 1").code, 2);
  EXPECT_EQ(run("train '" + dir.path("missing.txt") + "' -o '" + out + "'").code, 3);
  EXPECT_EQ(run("train '" + dir.file("bad.txt", "caf\xc3") + "' -o '" + out + "'").code, 3);
  EXPECT_EQ(run("train '" + dir.file("empty.txt", ", .") + "' -o '" + out + "'").code, 4);
  EXPECT_EQ(run("restore -m '" + dir.file("bad.model", "nonsense\n") + "'").code, 5);
  EXPECT_EQ(run("restore -m '" + dir.path("none.model") + "'").code, 3);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
