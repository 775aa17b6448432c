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

#include <atomic>
#include <cstdlib>
#include <random>
#include <set>

#include "morphclass/eval.hpp"
#include "morphclass/mknn.hpp"
#include "morphclass/parallel.hpp"
#include "test_support.hpp"

namespace mc {
namespace {

Dataset iris2d() {
  return apply_preset(load_dataset(test::data_path("iris.arff")), "iris2d");
}

void check_plan(const Dataset& ds, const FoldPlan& plan) {
  ASSERT_EQ(plan.fold_of.size(), ds.size());
  std::vector<std::size_t> seen(ds.size(), 0);
  for (std::size_t f = 0; f < plan.folds; ++f) {
    const auto test = plan.test_indices(f);
    const auto train = plan.train_indices(f);
    EXPECT_EQ(test.size() + train.size(), ds.size());
    for (std::size_t i : test) ++seen[i];
    std::set<std::size_t> t(test.begin(), test.end());
    for (std::size_t i : train) EXPECT_EQ(t.count(i), 0u);
  }
  for (std::size_t s : seen) EXPECT_EQ(s, 1u);
  const auto sizes = plan.fold_sizes();
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  EXPECT_LE(*hi - *lo, 1u);
  for (Label l = 1; l <= ds.num_classes(); ++l) {
    std::vector<std::size_t> per(plan.folds, 0);
    for (std::size_t i = 0; i < ds.size(); ++i) per[plan.fold_of[i]] += ds[i].label == l;
    const auto [a, b] = std::minmax_element(per.begin(), per.end());
    EXPECT_LE(*b - *a, 1u);
  }
}

TEST(KFold, BalancedHundred) {
  const Dataset ds = iris2d();
  const FoldPlan plan = kfold(ds);
  check_plan(ds, plan);
  for (std::size_t f = 0; f < 10; ++f) {
    const auto test = plan.test_indices(f);
    ASSERT_EQ(test.size(), 10u);
    std::size_t first = 0;
    for (std::size_t i : test) first += ds[i].label == 1;
    EXPECT_EQ(first, 5u);
  }
}

TEST(KFold, DiabetesSizes) {
  const Dataset ds = load_dataset(test::data_path("diabetes.arff"));
  const FoldPlan plan = kfold(ds, 10, 3);
  check_plan(ds, plan);
  const auto sizes = plan.fold_sizes();
  EXPECT_EQ(std::count(sizes.begin(), sizes.end(), 77u), 8);
  EXPECT_EQ(std::count(sizes.begin(), sizes.end(), 76u), 2);
}

TEST(KFold, DeterministicAndSeeded) {
  const Dataset ds = load_dataset(test::data_path("haberman.arff"));
  EXPECT_EQ(kfold(ds, 10, 9).fold_of, kfold(ds, 10, 9).fold_of);
  EXPECT_NE(kfold(ds, 10, 9).fold_of, kfold(ds, 10, 10).fold_of);
  check_plan(ds, kfold(ds, 7, 1));
  EXPECT_THROW(kfold(ds, 1), InputError);
  EXPECT_THROW(kfold(test::cell_dataset({{0, 0}}, {1}, 1), 2), InputError);
}

TEST(Metrics, Identities) {
  const std::vector<Label> truth{1, 1, 2, 2};
  const Metrics all = compute_metrics(truth, truth, 2);
  EXPECT_EQ(all.accuracy, 1.0);
  EXPECT_EQ(*all.tp_rate, 1.0);
  EXPECT_EQ(*all.tn_rate, 1.0);
  const std::vector<Label> ones{1, 1, 1, 1};
  const Metrics pos = compute_metrics(ones, truth, 2);
  EXPECT_EQ(pos.accuracy, 0.5);
  EXPECT_EQ(*pos.tp_rate, 1.0);
  EXPECT_EQ(*pos.tn_rate, 0.0);
  EXPECT_EQ(pos.confusion[1][0], 2u);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Label> t(1 + rng() % 40);
    std::vector<Label> p(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = static_cast<Label>(1 + rng() % 2);
      p[i] = static_cast<Label>(1 + rng() % 2);
    }
    const Metrics m = compute_metrics(p, t, 2);
    const double P = static_cast<double>(std::count(t.begin(), t.end(), 1));
    const double N = static_cast<double>(t.size()) - P;
    const double tp = m.tp_rate.value_or(0.0);
    const double tn = m.tn_rate.value_or(0.0);
    EXPECT_NEAR(m.accuracy, (tp * P + tn * N) / (P + N), 1e-12);
    EXPECT_EQ(m.tp_rate.has_value(), P > 0);
    EXPECT_EQ(m.tn_rate.has_value(), N > 0);
  }
  EXPECT_THROW(compute_metrics(ones, std::vector<Label>{1}, 2), InputError);
}

TEST(BruteKnn, Examples) {
  const Dataset ds = test::cell_dataset({{0, 0}, {5, 5}, {6, 5}, {9, 9}}, {1, 2, 2, 1}, 2);
  const GridSpec spec = test::unit_spec(10, 10);
  const std::vector<double> q{0.0, 1.0};
  EXPECT_EQ(brute_knn(ds, q, 1, spec), 1);
  EXPECT_EQ(brute_knn(ds, q, 4, spec), 1);  // 2:2 tie goes to the smaller id
  const std::vector<double> r{5.0, 6.0};
  EXPECT_EQ(brute_knn(ds, r, 1, spec), 2);
  EXPECT_THROW(brute_knn(ds, q, 0, spec), InputError);
}

TEST(BruteKnn, AgreesWithMkNNOnSmallGrids) {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset ds = test::random_cell_dataset(rng, 32, 32, 30, 2 + rng() % 2);
    const GridSpec spec = test::unit_spec(32, 32);
    for (int k : {1, 3, 5}) {
      const LabelGrid m = train_mknn(discretize(ds, spec, CountMode::kDeduplicated), {k, 0, {}});
      for (std::int64_t y = 0; y < 32; ++y) {
        for (std::int64_t x = 0; x < 32; ++x) {
          const std::vector<double> q{static_cast<double>(x), static_cast<double>(y)};
          ASSERT_EQ(m.classify(q), brute_knn(ds, q, k, spec, CountMode::kDeduplicated));
        }
      }
    }
  }
}

TEST(Experiment, RowsAreDeterministic) {
  const Dataset ds = iris2d();
  TrainerConfig cfg;
  cfg.mknn.k = 5;
  const FoldPlan plan = kfold(ds);
  const ExperimentResult a = run_experiment(ds, cfg, plan, "iris2d");
  const ExperimentResult b = run_experiment(ds, cfg, plan, "iris2d");
  EXPECT_EQ(a.row(), b.row());
  EXPECT_EQ(a.row().rfind("MkNN_Rep iris2d ", 0), 0u);
  EXPECT_EQ(a.metrics.n, 100u);
  EXPECT_NEAR(a.metrics.accuracy, cv_accuracy(ds, cfg), 1e-12);
  EXPECT_EQ(std::string(ExperimentResult::csv_header()), "classifier,dataset,acc,tp,tn,train_s,test_s");
  const std::string csv = a.csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), ','), 6);
  cfg.grid.mode = CountMode::kDeduplicated;
  cfg.algo = Algorithm::kMDC;
  EXPECT_EQ(classifier_name(cfg), "MDC");
  cfg.algo = Algorithm::kEnsembleMkNN;
  cfg.grid.mode = CountMode::kMultiset;
  EXPECT_EQ(classifier_name(cfg), "MkNN_Rep");
}

TEST(Experiment, AbsentRatesPrintDash) {
  ExperimentResult r;
  r.classifier = "MDC";
  r.dataset = "toy";
  r.metrics.accuracy = 0.5;
  r.metrics.tp_rate = 0.25;
  EXPECT_EQ(r.row(), "MDC toy 50.0 25.0 -");
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
  const Dataset ds = load_dataset(test::data_path("haberman.arff"));
  TrainerConfig cfg;
  cfg.algo = Algorithm::kEnsembleMkNN;
  cfg.grid.scale = 0.3;
  cfg.inner_folds = 3;
  const FoldPlan plan = kfold(ds);
  const char* old = std::getenv("MC_THREADS");
  const std::string saved = old ? old : "";
  setenv("MC_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  const auto serial = cross_val_predict(ds, cfg, plan);
  setenv("MC_THREADS", "4", 1);
  EXPECT_EQ(worker_count(), 4u);
  const auto parallel = cross_val_predict(ds, cfg, plan);
  if (old) {
    setenv("MC_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("MC_THREADS");
  }
  EXPECT_EQ(serial, parallel);
}

TEST(Parallel, RunsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw InputError("boom");
               }),
               InputError);
}

TEST(Presets, Shapes) {
  const Dataset iris = load_dataset(test::data_path("iris.arff"));
  EXPECT_EQ(apply_preset(iris, "iris").fingerprint(), iris.fingerprint());
  const Dataset two = apply_preset(iris, "iris2d");
  EXPECT_EQ(two.class_names(), (std::vector<std::string>{"Iris-versicolor", "Iris-virginica"}));
  const Dataset diabetes =
      apply_preset(load_dataset(test::data_path("diabetes.arff")), "diabetes2d");
  EXPECT_EQ(diabetes.attribute_names(), (std::vector<std::string>{"plas", "insu"}));
  EXPECT_EQ(diabetes.size(), 768u);
  EXPECT_THROW(apply_preset(iris, "wine"), InputError);
  EXPECT_THROW(apply_preset(iris, "diabetes2d"), InputError);
}

}  // namespace
}  // namespace mc
