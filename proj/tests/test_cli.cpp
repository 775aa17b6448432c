// Copyright 2026 The morphclass Authors.
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

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "morphclass/container.hpp"
#include "morphclass/mdc.hpp"
#include "test_support.hpp"

namespace mc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result mcls(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("mcls_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kIris = test::data_path("iris.arff");

TEST_F(Cli, TrainPredictRoundTrip) {
  const Result t = mcls({"train", "--algo", "mknn", "--data", kIris, "--preset", "iris2d", "--k",
                         "3", "--out", path("m.mc")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("coverage 100%"), std::string::npos);
  EXPECT_NE(t.out.find("convergence_reached yes"), std::string::npos);
  const LabelGrid m = load_model(path("m.mc"));
  EXPECT_TRUE(m.fully_covered());
  EXPECT_EQ(read_model(write_model(m, Codec::kRle)), m);

  const Result p1 = mcls({"predict", "--model", path("m.mc"), "--data", kIris, "--preset", "iris2d"});
  const Result p2 = mcls({"predict", "--model", path("m.mc"), "--data", kIris, "--preset", "iris2d"});
  ASSERT_EQ(p1.code, 0) << p1.err;
  EXPECT_EQ(p1.out, p2.out);
  EXPECT_EQ(std::count(p1.out.begin(), p1.out.end(), '\n'), 100);

  const Result wrong = mcls({"predict", "--model", path("m.mc"), "--data", kIris});
  EXPECT_EQ(wrong.code, cli::kExitUsage);
  EXPECT_NE(wrong.err.find("model expects p=2"), std::string::npos);
}

TEST_F(Cli, OneClassModelPredictsOneLabel) {
  write_text_file(path("one.csv"), "x,y,class\n1,1,a\n2,3,a\n4,2,a\n");
  ASSERT_EQ(mcls({"train", "--data", path("one.csv"), "--out", path("one.mc")}).code, 0);
  const Result p = mcls({"predict", "--model", path("one.mc"), "--data", path("one.csv")});
  EXPECT_EQ(p.out, "1\n1\n1\n");
}

TEST_F(Cli, MdcBetaExcludesLeftCone) {
  write_text_file(path("two.csv"), "x,y,class\n5,5,a\n0,0,b\n10,10,b\n");
  const Result t = mcls({"train", "--algo", "mdc", "--beta", "RTB", "--q", "2", "--tau", "8",
                         "--precision", "1", "--padding", "0", "--data", path("two.csv"),
                         "--out", path("mdc.mc"), "--codec", "tree"});
  ASSERT_EQ(t.code, 0) << t.err;
  const LabelGrid m = load_model(path("mdc.mc"));
  ASSERT_EQ(m.width(), 11u);
  std::size_t claimed = 0;
  for (std::int64_t y = 0; y < 11; ++y) {
    for (std::int64_t x = 0; x < 11; ++x) {
      if (m.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) != 1) continue;
      ++claimed;
      EXPECT_TRUE(orientation_allows({x - 5, y - 5}, kRight | kTop | kBottom)) << x << "," << y;
    }
  }
  EXPECT_GT(claimed, 20u);
  EXPECT_EQ(m.at(1, 5), 2);
}

TEST_F(Cli, MissingInputsExitTwo) {
  EXPECT_EQ(mcls({"train", "--data", path("nope.csv"), "--out", path("x.mc")}).code,
            cli::kExitUsage);
  EXPECT_EQ(mcls({"predict", "--model", path("nope.mc"), "--data", kIris}).code, cli::kExitUsage);
  EXPECT_EQ(mcls({"train", "--bogus", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(mcls({}).code, cli::kExitUsage);
  EXPECT_EQ(mcls({"train", "--data", kIris, "--algo", "svm", "--out", path("x.mc")}).code,
            cli::kExitUsage);
  EXPECT_EQ(mcls({"train", "--data", kIris, "--preset", "iris2d", "--beta", "Q", "--algo", "mdc",
                  "--out", path("x.mc")})
                .code,
            cli::kExitUsage);
}

TEST_F(Cli, CompressRoundTrip) {
  ASSERT_EQ(mcls({"train", "--data", kIris, "--preset", "iris2d", "--codec", "raw", "--out",
                  path("raw.mc")})
                .code,
            0);
  const Result r = mcls({"compress", "--model", path("raw.mc"), "--codec", "rle", "--out",
                         path("rle.mc")});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(mcls({"compress", "--model", path("rle.mc"), "--codec", "raw", "--out",
                  path("back.mc")})
                .code,
            0);
  EXPECT_EQ(read_text_file(path("back.mc")), read_text_file(path("raw.mc")));
  const Result tree = mcls({"compress", "--model", path("raw.mc"), "--codec", "tree"});
  EXPECT_NE(tree.out.find("tree tokens"), std::string::npos);
  const Result rect = mcls({"compress", "--model", path("raw.mc"), "--codec", "rect"});
  EXPECT_NE(rect.out.find("rectangles"), std::string::npos);
}

TEST_F(Cli, RenderHeader) {
  ASSERT_EQ(mcls({"train", "--data", kIris, "--preset", "iris2d", "--out", path("m.mc")}).code, 0);
  const LabelGrid m = load_model(path("m.mc"));
  ASSERT_EQ(mcls({"render", "--model", path("m.mc"), "--out", path("m.pgm"), "--cell-pixels", "3"})
                .code,
            0);
  const std::string pgm = read_text_file(path("m.pgm"));
  const std::string header = "P5\n" + std::to_string(3 * m.width()) + " " +
                             std::to_string(3 * m.height()) + "\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  EXPECT_EQ(pgm.size(), header.size() + 9 * m.width() * m.height());
  const Result overlay = mcls({"render", "--model", path("m.mc"), "--out", path("o.pgm"),
                               "--data", kIris, "--preset", "iris2d"});
  EXPECT_EQ(overlay.code, 0) << overlay.err;
}

TEST_F(Cli, CrossvalRowAndCsv) {
  const Result r = mcls({"crossval", "--data", kIris, "--preset", "iris2d", "--k", "5", "--csv",
                         path("r.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("MkNN_Rep iris2d ", 0), 0u);
  std::istringstream row(r.out);
  std::string name, data, acc, tp, tn;
  row >> name >> data >> acc >> tp >> tn;
  EXPECT_EQ(acc.size() - acc.find('.'), 2u);
  const std::string csv = read_text_file(path("r.csv"));
  EXPECT_EQ(csv.rfind("classifier,dataset,acc,tp,tn,train_s,test_s\nMkNN_Rep,iris2d,", 0), 0u);
}

TEST_F(Cli, ConfigFileAndFlagOverride) {
  write_text_file(path("c.cfg"), "# tuned\nalgo = mknn\nk = 1\nmode = dedup\npreset = iris2d\n");
  const Result a = mcls({"crossval", "--config", path("c.cfg"), "--data", kIris});
  const Result b = mcls({"crossval", "--data", kIris, "--preset", "iris2d", "--k", "1", "--mode",
                         "dedup"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("MkNN iris2d ", 0), 0u);
  const Result c = mcls({"crossval", "--config", path("c.cfg"), "--data", kIris, "--k", "9"});
  const Result d = mcls({"crossval", "--data", kIris, "--preset", "iris2d", "--k", "9", "--mode",
                         "dedup"});
  EXPECT_EQ(c.out, d.out);
  write_text_file(path("bad.cfg"), "k 3\n");
  EXPECT_EQ(mcls({"crossval", "--config", path("bad.cfg"), "--data", kIris}).code, cli::kExitUsage);
}

TEST_F(Cli, TuneWritesReusableConfig) {
  const Result t = mcls({"tune", "--data", kIris, "--preset", "iris2d", "--generations", "5",
                         "--out", path("best.cfg"), "--log", path("tune.log"), "--log-every", "1"});
  ASSERT_EQ(t.code, 0) << t.err;
  const std::string log = read_text_file(path("tune.log"));
  EXPECT_NE(log.find("generation 0 best"), std::string::npos);
  EXPECT_NE(log.find("generation 5 best"), std::string::npos);
  const Result cv = mcls({"crossval", "--config", path("best.cfg"), "--data", kIris});
  ASSERT_EQ(cv.code, 0) << cv.err;
  const std::string best = t.out.substr(t.out.find("best cv accuracy ") + 17);
  const double tuned = std::stod(best);
  std::istringstream row(cv.out);
  std::string name, data;
  double acc = 0;
  row >> name >> data >> acc;
  EXPECT_NEAR(acc, 100.0 * tuned, 0.051);
}

TEST_F(Cli, EnsembleTrainAndPredict) {
  const Result t = mcls({"train", "--algo", "ensemble-mknn", "--data", kIris, "--scale", "0.3",
                         "--out", path("e.mc")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("pair models: 18"), std::string::npos);
  const Result p = mcls({"predict", "--model", path("e.mc"), "--data", kIris});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(std::count(p.out.begin(), p.out.end(), '\n'), 150);
}

TEST_F(Cli, HelpExitsCleanly) {
  const Result h = mcls({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("train"), std::string::npos);
}

}  // namespace
}  // namespace mc
