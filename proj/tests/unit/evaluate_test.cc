// Copyright 2026 The codevec Authors.
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


#include "codevec/evaluate/evaluate.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "codevec/common/files.h"
#include "codevec/common/random.h"
#include "fixtures.h"

namespace codevec {
namespace {

// ---- kappa and F1 ----

TEST(Kappa, WorkedExample) {
  EXPECT_NEAR(kappa({{40, 10}, {20, 30}}), 0.4, 1e-12);
}

TEST(Kappa, DiagonalIsOne) {
  EXPECT_EQ(kappa({{5, 0, 0}, {0, 7, 0}, {0, 0, 1}}), 1.0);
}

TEST(Kappa, ConstantPredictionOnBalancedSetIsZero) {
  EXPECT_EQ(kappa({{50, 0}, {50, 0}}), 0.0);
}

TEST(Kappa, DegenerateChanceAgreement) {
  EXPECT_EQ(kappa({{9, 0}, {0, 0}}), 1.0);
  EXPECT_THROW(kappa({}), EmptyMatrix);
  EXPECT_THROW(kappa({{0, 0}, {0, 0}}), EmptyMatrix);
}

TEST(Kappa, ScaleInvariantBoundedAndZeroAtChance) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.uniform(4);
    ConfusionMatrix m(k, std::vector<std::int64_t>(k));
    for (auto& row : m) {
      for (auto& c : row) c = static_cast<std::int64_t>(rng.uniform(30));
    }
    m[0][0] += 1;
    ConfusionMatrix scaled = m;
    for (auto& row : scaled) {
      for (auto& c : row) c *= 7;
    }
    const double kv = kappa(m);
    EXPECT_GE(kv, -1.0);
    EXPECT_LE(kv, 1.0);
    EXPECT_NEAR(kappa(scaled), kv, 1e-12);
    // Outer product of marginals: observed agreement equals chance.
    std::vector<std::int64_t> r(k), c(k);
    for (auto& x : r) x = 1 + static_cast<std::int64_t>(rng.uniform(5));
    for (auto& x : c) x = 1 + static_cast<std::int64_t>(rng.uniform(5));
    ConfusionMatrix chance(k, std::vector<std::int64_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) chance[i][j] = r[i] * c[j];
    }
    EXPECT_NEAR(kappa(chance), 0.0, 1e-12);
  }
}

TEST(NamePredictionF1, Examples) {
  const auto same = name_prediction_f1({{"getResult", "getResult"}});
  EXPECT_EQ(same.f1, 1.0);
  const auto partial = name_prediction_f1({{"count", "getCount"}});
  EXPECT_EQ(partial.true_positives, 1);
  EXPECT_EQ(partial.false_positives, 1);
  EXPECT_EQ(partial.false_negatives, 0);
  EXPECT_NEAR(partial.precision, 0.5, 1e-12);
  EXPECT_NEAR(partial.recall, 1.0, 1e-12);
  EXPECT_NEAR(partial.f1, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(name_prediction_f1({{"sumValues", "isEmpty"}}).f1, 0.0);
}

TEST(NamePredictionF1, BoundsHold) {
  Rng rng(2);
  const std::vector<std::string> words = {"get", "set", "count", "value", "is", "max"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int p = 0; p < 1 + static_cast<int>(rng.uniform(5)); ++p) {
      auto name = [&] {
        std::string s = words[rng.uniform(words.size())];
        for (std::uint64_t i = rng.uniform(3); i > 0; --i) {
          std::string w = words[rng.uniform(words.size())];
          w[0] = static_cast<char>(std::toupper(w[0]));
          s += w;
        }
        return s;
      };
      pairs.emplace_back(name(), name());
    }
    const auto m = name_prediction_f1(pairs);
    EXPECT_LE(m.f1, std::min(2 * m.precision, 2 * m.recall) + 1e-12);
    EXPECT_LE(m.f1, std::max(m.precision, m.recall) + 1e-12);
    if (m.precision + m.recall > 0) {
      EXPECT_NEAR(m.f1, 2 * m.precision * m.recall / (m.precision + m.recall), 1e-12);
    }
  }
}

// ---- linear classifier ----

Design make_design(const std::vector<std::vector<double>>& rows,
                   const std::vector<int>& y, int classes) {
  Design d;
  d.x.resize(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  d.y = y;
  for (int c = 0; c < classes; ++c) d.labels.push_back("c" + std::to_string(c));
  return d;
}

// Gaussian-ish blobs around class-specific centres.
Design blobs(Rng& rng, int per_class, int classes, int dims, double spread) {
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (int c = 0; c < classes; ++c) {
    for (int i = 0; i < per_class; ++i) {
      std::vector<double> row(static_cast<std::size_t>(dims));
      for (int j = 0; j < dims; ++j) {
        row[static_cast<std::size_t>(j)] =
            (j % classes == c ? 2.0 : 0.0) + spread * rng.uniform_real(-1, 1);
      }
      rows.push_back(row);
      y.push_back(c);
    }
  }
  return make_design(rows, y, classes);
}

ClassifierConfig tight(double c = 1.0) {
  ClassifierConfig cfg;
  cfg.c = c;
  cfg.tolerance = 1e-12;
  cfg.max_iterations = 100000;
  return cfg;
}

TEST(TrainLinear, SeparatesSingletons) {
  const Design d = make_design({{-1}, {1}}, {0, 1}, 2);
  const LinearModel m = train_linear(d, {});
  EXPECT_EQ(m.predict(d.x.row(0).transpose()), 0);
  EXPECT_EQ(m.predict(d.x.row(1).transpose()), 1);
}

TEST(TrainLinear, ZeroFeaturesPredictMajority) {
  const Design d = make_design({{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}, {1, 1, 1, 0, 1}, 2);
  const LinearModel m = train_linear(d, {});
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_EQ(m.predict(d.x.row(i).transpose()), 1);
}

TEST(TrainLinear, RejectsSingleLabel) {
  const Design d = make_design({{1}, {2}}, {0, 0}, 2);
  EXPECT_THROW(train_linear(d, {}), DegenerateData);
  ClassifierConfig bad;
  bad.c = 0;
  EXPECT_THROW(train_linear(make_design({{1}, {2}}, {0, 1}, 2), bad), std::invalid_argument);
}

// Gradient of the primal of one binary problem; it vanishes only at the
// optimum because the objective is differentiable and strictly convex.
Vector primal_gradient(const Vector& w, const Matrix& x, const std::vector<int>& s,
                       double c) {
  Vector g = w;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double slack = std::max(0.0, 1.0 - s[static_cast<std::size_t>(i)] * x.row(i).dot(w));
    g -= 2 * c * slack * s[static_cast<std::size_t>(i)] * x.row(i).transpose();
  }
  return g;
}

TEST(TrainLinear, SolutionIsStationaryForThePrimal) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Design d = blobs(rng, 15, 3, 4, 2.5);
    const double c = trial % 2 ? 0.3 : 4.0;
    const LinearModel m = train_linear(d, tight(c));
    Matrix xb(d.x.rows(), d.x.cols() + 1);
    xb << d.x, Vector::Ones(d.x.rows());
    for (int k = 0; k < 3; ++k) {
      Vector w(d.x.cols() + 1);
      w << m.weights.row(k).transpose(), m.biases[k];
      std::vector<int> s;
      for (int y : d.y) s.push_back(y == k ? 1 : -1);
      EXPECT_LT(primal_gradient(w, xb, s, c).norm(), 1e-3) << trial << "/" << k;
      // Random perturbations never improve the objective.
      const double at = svm_primal(w, xb, s, c);
      for (int p = 0; p < 20; ++p) {
        const Vector delta = Vector::NullaryExpr(w.size(), [&](Eigen::Index) {
          return rng.uniform_real(-1e-3, 1e-3);
        });
        EXPECT_GE(svm_primal(w + delta, xb, s, c), at - 1e-10);
      }
    }
    for (double gap : m.duality_gaps) EXPECT_GE(gap, -1e-9);
  }
}

TEST(TrainLinear, DefaultToleranceBoundsTheObjective) {
  Rng rng(4);
  const Design d = blobs(rng, 20, 2, 3, 3.0);
  ClassifierConfig loose;
  const LinearModel a = train_linear(d, loose);
  const LinearModel b = train_linear(d, tight());
  Matrix xb(d.x.rows(), d.x.cols() + 1);
  xb << d.x, Vector::Ones(d.x.rows());
  for (int k = 0; k < 2; ++k) {
    std::vector<int> s;
    for (int y : d.y) s.push_back(y == k ? 1 : -1);
    Vector wa(4), wb(4);
    wa << a.weights.row(k).transpose(), a.biases[k];
    wb << b.weights.row(k).transpose(), b.biases[k];
    const double opt = svm_primal(wb, xb, s, 1.0);
    EXPECT_LE(svm_primal(wa, xb, s, 1.0) - opt, loose.tolerance * (1 + std::abs(opt)));
  }
}

TEST(TrainLinear, DuplicatedRowsMatchDoubledC) {
  // Duplicating every row doubles the loss term, which is the same problem
  // as doubling C; halving C on the duplicated data restores the original.
  Rng rng(5);
  const Design d = blobs(rng, 12, 2, 3, 2.0);
  Design dup = d;
  dup.x.resize(2 * d.x.rows(), d.x.cols());
  dup.x << d.x, d.x;
  dup.y.insert(dup.y.end(), d.y.begin(), d.y.end());
  const LinearModel base = train_linear(d, tight(1.0));
  const LinearModel halved = train_linear(dup, tight(0.5));
  EXPECT_TRUE(halved.weights.isApprox(base.weights, 1e-5));
  EXPECT_TRUE(halved.biases.isApprox(base.biases, 1e-5));
  const LinearModel doubled = train_linear(d, tight(2.0));
  const LinearModel same_c = train_linear(dup, tight(1.0));
  EXPECT_TRUE(same_c.weights.isApprox(doubled.weights, 1e-5));
}

TEST(TrainLinear, NoBiasLeavesBiasesZero) {
  Rng rng(6);
  ClassifierConfig cfg;
  cfg.bias = false;
  const LinearModel m = train_linear(blobs(rng, 10, 2, 2, 1.0), cfg);
  EXPECT_EQ(m.biases, Vector::Zero(2));
}

// ---- stratified folds and cross-validation ----

TEST(StratifiedFolds, ProportionsWithinOneRow) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int folds = 2 + static_cast<int>(rng.uniform(9));
    const int classes = 2 + static_cast<int>(rng.uniform(4));
    std::vector<int> y;
    std::vector<int> count(static_cast<std::size_t>(classes), 0);
    for (int c = 0; c < classes; ++c) {
      const int n = folds + static_cast<int>(rng.uniform(40));
      for (int i = 0; i < n; ++i) y.push_back(c);
      count[static_cast<std::size_t>(c)] = n;
    }
    rng.shuffle(y);
    const auto fold = stratified_folds(y, folds, trial, 0);
    std::vector<std::vector<int>> per(static_cast<std::size_t>(folds),
                                      std::vector<int>(static_cast<std::size_t>(classes), 0));
    std::vector<int> sizes(static_cast<std::size_t>(folds), 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      ASSERT_GE(fold[i], 0);
      ASSERT_LT(fold[i], folds);
      ++per[static_cast<std::size_t>(fold[i])][static_cast<std::size_t>(y[i])];
      ++sizes[static_cast<std::size_t>(fold[i])];
    }
    for (int f = 0; f < folds; ++f) {
      for (int c = 0; c < classes; ++c) {
        const double expected = static_cast<double>(count[static_cast<std::size_t>(c)]) / folds;
        EXPECT_LT(std::abs(per[static_cast<std::size_t>(f)][static_cast<std::size_t>(c)] - expected), 1.0);
      }
    }
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    EXPECT_LE(*hi - *lo, 1);
  }
}

TEST(StratifiedFolds, PureFunctionOfSeedRunAndLabelPattern) {
  std::vector<int> y;
  for (int i = 0; i < 60; ++i) y.push_back(i % 3);
  EXPECT_EQ(stratified_folds(y, 5, 9, 2), stratified_folds(y, 5, 9, 2));
  EXPECT_NE(stratified_folds(y, 5, 9, 2), stratified_folds(y, 5, 9, 3));
  EXPECT_NE(stratified_folds(y, 5, 9, 2), stratified_folds(y, 5, 10, 2));
  std::vector<int> renamed = y;
  for (int& v : renamed) v = (v + 1) % 3;
  EXPECT_EQ(stratified_folds(renamed, 5, 9, 2), stratified_folds(y, 5, 9, 2));
  const CvPlan plan{3, 5, 9};
  EXPECT_EQ(partition_fingerprint(renamed, plan), partition_fingerprint(y, plan));
  EXPECT_NE(partition_fingerprint(y, plan), partition_fingerprint(y, CvPlan{3, 5, 8}));
}

LabeledDataset to_dataset(const Design& d) {
  LabeledDataset ds;
  ds.feature_width = static_cast<std::size_t>(d.x.cols());
  ds.labels = d.labels;
  for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
    ds.rows.push_back({d.x.row(i).transpose(), d.labels[static_cast<std::size_t>(d.y[static_cast<std::size_t>(i)])], ""});
  }
  return ds;
}

TEST(CrossValidate, SeparableDataGivesKappaOne) {
  Rng rng(8);
  const EvalReport r = cross_validate(to_dataset(blobs(rng, 30, 2, 2, 0.5)), {}, {});
  EXPECT_EQ(r.mean_kappa, 1.0);
  EXPECT_EQ(r.mean_accuracy, 1.0);
  ASSERT_EQ(r.fold_kappa.size(), 10u);
  for (const auto& run : r.fold_kappa) EXPECT_EQ(run.size(), 10u);
  EXPECT_EQ(r.confusion_total[0][0] + r.confusion_total[1][1], 600);
}

TEST(CrossValidate, ShuffledLabelsGiveChanceKappa) {
  // Labels independent of the features leave nothing to learn; kappa over
  // ten runs stays near zero for every seed tried.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(seed);
    LabeledDataset ds;
    ds.feature_width = 5;
    ds.labels = {"a", "b"};
    std::vector<std::string> ys;
    for (int i = 0; i < 400; ++i) ys.push_back(i % 2 ? "a" : "b");
    rng.shuffle(ys);
    for (const std::string& y : ys) {
      ds.rows.push_back(
          {Vector::NullaryExpr(5, [&](Eigen::Index) { return rng.uniform_real(-1, 1); }), y, ""});
    }
    const EvalReport r = cross_validate(ds, {}, {10, 10, seed});
    EXPECT_LT(std::abs(r.mean_kappa), 0.1) << r.mean_kappa;
  }
}

TEST(CrossValidate, ReproducibleAndThreadIndependent) {
  Rng rng(10);
  const LabeledDataset ds = to_dataset(blobs(rng, 25, 3, 4, 2.5));
  const CvPlan plan{4, 5, 77};
  const EvalReport a = cross_validate(ds, {}, plan, 1);
  const EvalReport b = cross_validate(ds, {}, plan, 1);
  const EvalReport c = cross_validate(ds, {}, plan, 3);
  EXPECT_EQ(a.fold_kappa, b.fold_kappa);
  EXPECT_EQ(a.fold_kappa, c.fold_kappa);
  EXPECT_EQ(a.confusion_total, c.confusion_total);
  EXPECT_EQ(format_report(a), format_report(c));
}

TEST(CrossValidate, LabelNamesDoNotMatter) {
  Rng rng(11);
  const Design d = blobs(rng, 20, 3, 3, 3.0);
  LabeledDataset ds = to_dataset(d);
  LabeledDataset renamed = ds;
  const std::map<std::string, std::string> rename = {{"c0", "zeta"}, {"c1", "alpha"}, {"c2", "mid"}};
  for (auto& row : renamed.rows) row.label = rename.at(row.label);
  renamed.labels = {"alpha", "mid", "zeta"};
  const CvPlan plan{2, 4, 3};
  const EvalReport a = cross_validate(ds, {}, plan);
  const EvalReport b = cross_validate(renamed, {}, plan);
  EXPECT_EQ(a.fingerprint, b.fingerprint);
  for (int run = 0; run < 2; ++run) {
    for (int f = 0; f < 4; ++f) {
      EXPECT_NEAR(a.fold_kappa[run][f], b.fold_kappa[run][f], 1e-12);
    }
  }
}

TEST(CrossValidate, RejectsTooFewRows) {
  Rng rng(12);
  LabeledDataset ds = to_dataset(blobs(rng, 9, 2, 2, 1.0));
  EXPECT_THROW(cross_validate(ds, {}, {}), TooFewRows);
  for (auto& row : ds.rows) row.label = "one";
  ds.labels = {"one"};
  EXPECT_THROW(cross_validate(ds, {}, {1, 2, 0}), DegenerateData);
  EXPECT_THROW(cross_validate(ds, {}, {1, 1, 0}), std::invalid_argument);
}

// ---- t-test ----

// Two-tailed p by Simpson integration of the Student-t density.
double simpson_p(double t, double df) {
  const double log_norm = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                          0.5 * std::log(df * M_PI);
  auto f = [&](double x) {
    return std::exp(log_norm - (df + 1) / 2 * std::log1p(x * x / df));
  };
  const int n = 200000;
  const double h = std::abs(t) / n;
  double s = f(0) + f(std::abs(t));
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(i * h);
  return 1 - 2 * s * h / 3;
}

TEST(PairedTTest, IdenticalSeriesGivePOne) {
  const std::vector<double> a = {0.1, 0.5, 0.3};
  const TTestResult r = paired_ttest(a, a);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.mean_diff, 0.0);
  EXPECT_FALSE(r.significant);
}

TEST(PairedTTest, OpposedPairGivesPOne) {
  const TTestResult r = paired_ttest({0.1, -0.1}, {0, 0});
  EXPECT_EQ(r.t, 0.0);
  EXPECT_NEAR(r.p_value, 1.0, 1e-15);
}

TEST(PairedTTest, ConstantShiftWithNoiseIsSignificant) {
  Rng rng(13);
  std::vector<double> a, b;
  for (int i = 0; i < 100; ++i) {
    const double base = rng.uniform_real(0.3, 0.7);
    const double noise = (i % 2 ? 1 : -1) * 1e-3;
    a.push_back(base + 0.1 + noise);
    b.push_back(base);
  }
  const TTestResult r = paired_ttest(a, b);
  EXPECT_TRUE(r.significant);
  EXPECT_LT(r.p_value, 1e-10);
  EXPECT_NEAR(r.mean_diff, 0.1, 1e-3);
  EXPECT_EQ(paired_ttest({1.1, 2.1}, {1, 2}).p_value, 0.0);
}

TEST(PairedTTest, MatchesNumericalIntegration) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform(30));
    std::vector<double> a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back(rng.uniform_real(0, 1));
      b.push_back(rng.uniform_real(0, 1) + 0.05);
    }
    const TTestResult r = paired_ttest(a, b);
    EXPECT_NEAR(r.p_value, simpson_p(r.t, n - 1), 1e-8) << "n=" << n;
    const TTestResult swapped = paired_ttest(b, a);
    EXPECT_NEAR(swapped.p_value, r.p_value, 1e-15);
    EXPECT_EQ(swapped.mean_diff, -r.mean_diff);
  }
}

TEST(PairedTTest, RejectsBadInput) {
  EXPECT_THROW(paired_ttest({1}, {1}), std::invalid_argument);
  EXPECT_THROW(paired_ttest({1, 2}, {1}), std::invalid_argument);
}

TEST(CompareReports, RequiresMatchingPartitions) {
  Rng rng(15);
  const LabeledDataset ds = to_dataset(blobs(rng, 20, 2, 3, 3.0));
  const EvalReport a = cross_validate(ds, {}, {2, 5, 1});
  ClassifierConfig other;
  other.c = 0.01;
  const EvalReport b = cross_validate(ds, other, {2, 5, 1});
  EXPECT_EQ(compare_reports(a, b).n, 10);
  EXPECT_THROW(compare_reports(a, cross_validate(ds, {}, {2, 5, 2})), MismatchedFolds);
}

// ---- rank scoring ----

TEST(RankAggregations, ScoresTopFive) {
  const std::map<std::string, double> column = {
      {"meanStddev", 0.736}, {"minMaxMean", 0.734}, {"mean", 0.730},
      {"maxMean", 0.729},    {"sumMean", 0.728},    {"min", 0.700},
      {"median", 0.650}};
  const auto totals = rank_aggregations({{"algorithms", column}});
  EXPECT_EQ(totals.at("meanStddev"), 5);
  EXPECT_EQ(totals.at("minMaxMean"), 4);
  EXPECT_EQ(totals.at("mean"), 3);
  EXPECT_EQ(totals.at("maxMean"), 2);
  EXPECT_EQ(totals.at("sumMean"), 1);
  EXPECT_EQ(totals.at("min"), 0);
  EXPECT_EQ(totals.at("median"), 0);
}

TEST(RankAggregations, AdditiveAcrossDatasetsAndBoundedPerDataset) {
  std::map<std::string, double> scores;
  Rng rng(16);
  for (const auto& s : standard_agg_suite()) scores[s.name()] = rng.uniform_real(0, 1);
  scores["mean"] = 2;
  const auto one = rank_aggregations({{"a", scores}});
  EXPECT_EQ(one.size(), 23u);
  int sum = 0;
  for (const auto& [name, total] : one) {
    EXPECT_LE(total, 5);
    sum += total;
  }
  EXPECT_EQ(sum, 15);
  EXPECT_EQ(rank_aggregations({{"a", scores}, {"b", scores}}).at("mean"), 10);
}

TEST(RankAggregations, TiesFollowSuiteOrder) {
  std::map<std::string, double> scores;
  for (const auto& s : standard_agg_suite()) scores[s.name()] = 0.5;
  const auto totals = rank_aggregations({{"a", scores}});
  EXPECT_EQ(totals.at("min"), 5);
  EXPECT_EQ(totals.at("max"), 4);
  EXPECT_EQ(totals.at("sum"), 3);
  EXPECT_EQ(totals.at("mean"), 2);
  EXPECT_EQ(totals.at("median"), 1);
  EXPECT_EQ(totals.at("stddev"), 0);
  EXPECT_TRUE(canonical_name_less("stddev", "minMax"));
  EXPECT_TRUE(canonical_name_less("minMaxSumMeanMedianStddev", "custom"));
}

// ---- similarity ----

TEST(VectorSimilarity, Examples) {
  Vector u(2), v(2);
  u << 1, 0;
  v << 0, 1;
  const Similarity s = vector_similarity(u, v);
  EXPECT_NEAR(s.cosine, 0, 1e-15);
  EXPECT_NEAR(s.euclidean, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(vector_similarity(u, u).cosine, 1.0);
  EXPECT_EQ(vector_similarity(u, u).euclidean, 0.0);
  EXPECT_EQ(vector_similarity(u, -u).cosine, -1.0);
  EXPECT_THROW(vector_similarity(u, Vector::Zero(2)), ZeroVector);
  EXPECT_THROW(vector_similarity(u, Vector::Ones(3)), std::invalid_argument);
}

// ---- results records ----

TEST(ResultsRecord, RoundTripsExactly) {
  testing::TempDir dir("eval_report");
  Rng rng(17);
  EvalReport r = cross_validate(to_dataset(blobs(rng, 12, 3, 3, 3.0)), {}, {2, 4, 5});
  r.dataset = "toy set";
  r.aggregation = "minMax";
  r.system = "random";
  write_report(dir / "r.txt", r);
  const EvalReport back = read_report(dir / "r.txt");
  EXPECT_EQ(back.dataset, r.dataset);
  EXPECT_EQ(back.aggregation, "minMax");
  EXPECT_EQ(back.system, "random");
  EXPECT_EQ(back.labels, r.labels);
  EXPECT_EQ(back.fold_kappa, r.fold_kappa);
  EXPECT_EQ(back.confusion_total, r.confusion_total);
  EXPECT_EQ(back.fingerprint, r.fingerprint);
  EXPECT_EQ(back.mean_kappa, r.mean_kappa);
  EXPECT_EQ(back.seed, 5u);
  EXPECT_EQ(format_report(back), format_report(r));
  EXPECT_THROW(parse_report("dataset\tx\n"), IoError);
  EXPECT_THROW(parse_report("format\tcodevec-results 1\nruns\t2\nfolds\t2\nkappa\t0\t1\t1\n"),
               IoError);
  EXPECT_NE(format_ttest(paired_ttest({1, 2, 3}, {0, 2, 1})).find("significant\tfalse"),
            std::string::npos);
}

}  // namespace
}  // namespace codevec
