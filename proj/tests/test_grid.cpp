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

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "morphclass/eval.hpp"
#include "morphclass/grid.hpp"
#include "morphclass/log.hpp"
#include "test_support.hpp"

namespace mc {
namespace {

Dataset one_d(std::vector<double> xs, std::vector<Label> labels = {}) {
  std::vector<Instance> inst;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    inst.push_back({{xs[i]}, labels.empty() ? Label{1} : labels[i]});
  }
  return Dataset({"x"}, {"a", "b"}, std::move(inst), false);
}

class WarningCapture {
 public:
  WarningCapture() {
    previous_ = set_warning_sink([this](const std::string& m) { messages.push_back(m); });
  }
  ~WarningCapture() { set_warning_sink(previous_); }
  std::vector<std::string> messages;

 private:
  WarningSink previous_;
};

TEST(Grid, RoundHalfAwayFromZero) {
  EXPECT_EQ(round_half_away(12.6), 13.0);
  EXPECT_EQ(round_half_away(34.4), 34.0);
  EXPECT_EQ(round_half_away(2.5), 3.0);
  EXPECT_EQ(round_half_away(-2.5), -3.0);
  EXPECT_EQ(round_half_away(0.5), 1.0);
}

TEST(Grid, CellOfExamples) {
  const GridSpec spec{{10.0, 10.0}, {0, 0}, {100, 100}};
  const std::vector<double> x{1.26, 3.44};
  const CellCoords c = cell_of(x, spec);
  EXPECT_EQ(c.coords, (std::vector<std::int64_t>{13, 34}));
  EXPECT_FALSE(c.clamped);
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_EQ(cell_of(zero, spec).coords, (std::vector<std::int64_t>{0, 0}));
  const GridSpec s1{{2.0}, {0}, {10}};
  const std::vector<double> half{2.5};
  EXPECT_EQ(cell_of(half, s1).coords[0], 5);
}

TEST(Grid, CellOfClampsAndFlags) {
  const GridSpec spec{{1.0, 1.0}, {0, 0}, {4, 4}};
  const std::vector<double> far{-100.0, 1e9};
  const CellCoords c = cell_of(far, spec);
  EXPECT_EQ(c.coords, (std::vector<std::int64_t>{0, 3}));
  EXPECT_TRUE(c.clamped);
  const std::vector<double> bad{std::numeric_limits<double>::quiet_NaN(), 0.0};
  EXPECT_THROW(cell_of(bad, spec), InputError);
}

TEST(Grid, BuildSpecBounds) {
  const Dataset ds = one_d({0.0, 1.0});
  const std::vector<double> v{1.0};
  const GridSpec s = build_spec(ds, v, 0);
  EXPECT_EQ(s.origin, std::vector<std::int64_t>{0});
  EXPECT_EQ(s.dims, std::vector<std::int64_t>{2});
  for (int k = 0; k <= 5; ++k) {
    const GridSpec padded = build_spec(ds, v, k);
    EXPECT_EQ(padded.dims[0], s.dims[0] + 2 * k);
    EXPECT_EQ(padded.origin[0], s.origin[0] - k);
  }
}

TEST(Grid, BuildSpecErrors) {
  const std::vector<double> v{1.0};
  const Dataset empty({"x"}, {"a"}, {}, false);
  EXPECT_THROW(build_spec(empty, v, 0), InputError);
  EXPECT_THROW(one_d({0.0, std::numeric_limits<double>::infinity()}), InputError);
  const Dataset ds = one_d({0.0, 1.0});
  const std::vector<double> zero{0.0};
  EXPECT_THROW(build_spec(ds, zero, 0), InputError);
  EXPECT_THROW(build_spec(ds, v, -1), InputError);
}

TEST(Grid, DegenerateAxisWarns) {
  WarningCapture capture;
  const Dataset ds = one_d({3.0, 3.0, 3.0});
  const auto v = default_precision(ds);
  EXPECT_EQ(v[0], 1.0);
  const GridSpec s = build_spec(ds, v, 2);
  EXPECT_EQ(s.dims[0], 1 + 2 * 2);
  EXPECT_FALSE(capture.messages.empty());
}

TEST(Grid, DefaultPrecisionSpans64Cells) {
  const Dataset ds = one_d({-1.0, 2.0, 0.5});
  const auto v = default_precision(ds);
  EXPECT_DOUBLE_EQ(v[0], 63.0 / 3.0);
  const GridSpec s = build_spec(ds, v, 0);
  EXPECT_EQ(s.dims[0], 64);
}

TEST(Grid, IrisTwoDimensionalSpec) {
  const Dataset iris2d = apply_preset(load_dataset(test::data_path("iris.arff")), "iris2d");
  ASSERT_EQ(iris2d.size(), 100u);
  EXPECT_EQ(iris2d.attribute_names(), (std::vector<std::string>{"sepallength", "petallength"}));
  // Extremes of the rounded coordinates, computed independently.
  std::int64_t lo[2] = {1 << 30, 1 << 30};
  std::int64_t hi[2] = {-(1 << 30), -(1 << 30)};
  for (const Instance& inst : iris2d.instances()) {
    for (int j = 0; j < 2; ++j) {
      const auto r = static_cast<std::int64_t>(std::floor(inst.features[j] * 10.0 + 0.5));
      lo[j] = std::min(lo[j], r);
      hi[j] = std::max(hi[j], r);
    }
  }
  const std::vector<double> v{10.0, 10.0};
  const GridSpec s = build_spec(iris2d, v, 2);
  for (int j = 0; j < 2; ++j) {
    EXPECT_EQ(s.origin[j], lo[j] - 2);
    EXPECT_EQ(s.dims[j], hi[j] - lo[j] + 1 + 4);
  }
  EXPECT_EQ(s.dims, (std::vector<std::int64_t>{35, 44}));
  const CountGrid g = discretize(iris2d, s);
  EXPECT_EQ(g.total(), 100u);
  EXPECT_EQ(g.class_totals(), (std::vector<std::uint64_t>{50, 50}));
}

TEST(Grid, MultisetAndDedupModes) {
  const Dataset ds = test::cell_dataset({{1, 1}, {1, 1}, {2, 0}}, {1, 1, 2}, 2);
  const GridSpec s = test::unit_spec(4, 4);
  const CountGrid multi = discretize(ds, s, CountMode::kMultiset);
  EXPECT_EQ(multi.count(1 * 4 + 1, 1), 2u);
  EXPECT_EQ(multi.total(), 3u);
  const CountGrid dedup = discretize(ds, s, CountMode::kDeduplicated);
  EXPECT_EQ(dedup.count(1 * 4 + 1, 1), 1u);
  EXPECT_EQ(dedup.total(), 2u);
  for (std::uint32_t v : dedup.raw()) EXPECT_LE(v, 1u);
}

TEST(Grid, ConservationDeterminismAndClamping) {
  std::mt19937_64 rng(5);
  const Dataset ds = test::random_cell_dataset(rng, 20, 20, 300, 3);
  const GridSpec small = test::unit_spec(10, 10);
  WarningCapture capture;
  const CountGrid a = discretize(ds, small);
  const CountGrid b = discretize(ds, small);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.total(), ds.size());
  std::size_t outside = 0;
  for (const Instance& inst : ds.instances()) {
    outside += inst.features[0] >= 10 || inst.features[1] >= 10;
  }
  EXPECT_EQ(a.clamp_events(), outside);
  EXPECT_FALSE(capture.messages.empty());
}

TEST(Grid, ProjectAndAxisPairs) {
  const Dataset iris = load_dataset(test::data_path("iris.arff"));
  const Dataset p = project(iris, 0, 2);
  EXPECT_EQ(p.attribute_names(), (std::vector<std::string>{"sepallength", "petallength"}));
  ASSERT_EQ(p.size(), iris.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p[i].features[0], iris[i].features[0]);
    EXPECT_EQ(p[i].features[1], iris[i].features[2]);
    EXPECT_EQ(p[i].label, iris[i].label);
  }
  const Dataset again = project(p, 0, 1);
  EXPECT_EQ(again.fingerprint(), p.fingerprint());
  EXPECT_EQ(axis_pairs(4).size(), 6u);
  EXPECT_EQ(axis_pairs(7).size(), 21u);
  EXPECT_THROW(project(iris, 1, 1), InputError);
  EXPECT_THROW(project(iris, 0, 9), InputError);
}

TEST(LabelGrid, ClassifyMatchesCellLookup) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-30.0, 90.0);
  const GridSpec spec{{0.7, 2.0}, {-4, 11}, {37, 52}};
  std::vector<Label> labels(spec.cell_count());
  for (auto& l : labels) l = static_cast<Label>(1 + rng() % 5);
  const LabelGrid g(spec, 5, labels);
  std::vector<double> xs(500);
  std::vector<double> ys(500);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = u(rng);
    ys[i] = i % 7 == 0 ? (static_cast<double>(i) + 0.5) / 2.0 : u(rng);
  }
  std::vector<Label> batch(xs.size());
  g.classify_batch(xs, ys, batch);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::vector<double> f{xs[i], ys[i]};
    const Label want = labels[linear_index(cell_of(f, spec).coords, spec)];
    EXPECT_EQ(g.classify(f), want);
    EXPECT_EQ(batch[i], want);
  }
  const std::vector<double> three{1.0, 2.0, 3.0};
  EXPECT_THROW(g.classify(three), InputError);
  const std::vector<double> nan{std::nan(""), 1.0};
  EXPECT_THROW(g.classify(nan), InputError);
  const LabelGrid line(GridSpec{{1.0}, {0}, {3}}, 2, {1, 2, 2});
  const std::vector<double> at{0.6};
  EXPECT_EQ(line.classify(at), 2);
}

TEST(Dataset, CsvParsing) {
  const Dataset ds = parse_csv("a,b,class\n1,2,x\n3.5,-1,y\n0,0,x\n");
  EXPECT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.class_names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(ds[1].label, 2);
  EXPECT_EQ(ds[1].features, (std::vector<double>{3.5, -1.0}));
  std::ostringstream out;
  write_csv(out, ds);
  EXPECT_EQ(parse_csv(out.str()).fingerprint(), ds.fingerprint());
  EXPECT_THROW(parse_csv("a,class\n1,x,3\n"), InputError);
  EXPECT_THROW(parse_csv("a,class\nfoo,x\n"), InputError);
  EXPECT_THROW(parse_csv(""), InputError);
}

TEST(Dataset, ArffParsing) {
  const std::string text =
      "% comment\n@relation t\n@attribute a numeric\n@attribute 'b c' real\n"
      "@attribute class {p,q}\n@data\n1,2,q\n% skip\n3,4,p\n";
  const Dataset ds = parse_arff(text);
  EXPECT_EQ(ds.attribute_names(), (std::vector<std::string>{"a", "b c"}));
  EXPECT_EQ(ds[0].label, 2);
  EXPECT_EQ(ds[1].label, 1);
  EXPECT_THROW(parse_arff("@attribute a numeric\n@attribute class {p}\n@data\n?,p\n"),
               InputError);
  EXPECT_THROW(parse_arff("@attribute a numeric\n@attribute class {p}\n@data\n1,z\n"),
               InputError);
}

TEST(Dataset, BundledFiles) {
  const Dataset iris = load_dataset(test::data_path("iris.arff"));
  EXPECT_EQ(iris.size(), 150u);
  EXPECT_EQ(iris.dims(), 4u);
  const Dataset diabetes = load_dataset(test::data_path("diabetes.arff"));
  EXPECT_EQ(diabetes.size(), 768u);
  EXPECT_EQ(diabetes.class_counts(), (std::vector<std::size_t>{500, 268}));
  const Dataset haberman = load_dataset(test::data_path("haberman.arff"));
  EXPECT_EQ(haberman.class_counts(), (std::vector<std::size_t>{225, 81}));
  EXPECT_THROW(load_dataset("/nonexistent/file.csv"), InputError);
}

TEST(Dataset, ValidationAndTransforms) {
  EXPECT_THROW(Dataset({"x"}, {"a", "b"}, {{{1.0}, 1}}, true), InputError);
  EXPECT_THROW(Dataset({"x"}, {"a"}, {{{1.0}, 2}}, false), InputError);
  EXPECT_THROW(Dataset({"x"}, {"a"}, {{{1.0, 2.0}, 1}}, false), InputError);
  const Dataset iris = load_dataset(test::data_path("iris.arff"));
  const Dataset two = drop_class(iris, 1);
  EXPECT_EQ(two.num_classes(), 2u);
  EXPECT_EQ(two.size(), 100u);
  const Dataset bin = binarize(iris, 3);
  EXPECT_EQ(bin.class_counts(), (std::vector<std::size_t>{50, 100}));
}

}  // namespace
}  // namespace mc
