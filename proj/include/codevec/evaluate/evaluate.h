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


#ifndef CODEVEC_EVALUATE_EVALUATE_H_
#define CODEVEC_EVALUATE_EVALUATE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "codevec/aggregate/aggregate.h"
#include "codevec/evaluate/metrics.h"
#include "codevec/model/model.h"

namespace codevec {

class DegenerateData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooFewRows : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MismatchedFolds : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroVector : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ClassifierConfig {
  double c = 1.0;
  bool bias = true;
  // Relative duality gap at which the solver stops.
  double tolerance = 1e-3;
  int max_iterations = 1000;

  void validate() const;
};

// Rows as a dense matrix with class indices into `labels`.
struct Design {
  Matrix x;
  std::vector<int> y;
  std::vector<std::string> labels;
};

Design to_design(const LabeledDataset& dataset);

// One-vs-rest L2-regularized squared-hinge linear classifier. The bias is
// an extra constant feature and is regularized along with the weights.
struct LinearModel {
  Matrix weights;  // classes x features
  Vector biases;   // classes; zero without bias
  std::vector<double> duality_gaps;

  Vector decision(const Eigen::Ref<const Vector>& x) const;
  // Argmax of decision values; the lower class index wins ties.
  int predict(const Eigen::Ref<const Vector>& x) const;
};

// Primal objective 0.5 |w|^2 + C sum max(0, 1 - y w.x)^2 of one binary
// problem, with y in {-1, +1} and the bias folded into w.
double svm_primal(const Vector& w, const Matrix& x, const std::vector<int>& sign,
                  double c);

// Dual coordinate descent on each one-vs-rest problem over `rows` of
// `design`. Throws DegenerateData when the rows carry fewer than two labels.
LinearModel train_linear(const Design& design, const std::vector<std::size_t>& rows,
                         const ClassifierConfig& config);
LinearModel train_linear(const Design& design, const ClassifierConfig& config);

struct CvPlan {
  int runs = 10;
  int folds = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

// Fold index of every row for one run. Classes are visited in order of first
// appearance, each class's rows are shuffled with a stream derived from
// (seed, run, class ordinal) and dealt round-robin, continuing the deal
// across classes. Depends only on the seed, the run and which rows share a
// label.
std::vector<int> stratified_folds(const std::vector<int>& y, int folds,
                                  std::uint64_t seed, int run);

// Hex digest of every run's fold assignment.
std::string partition_fingerprint(const std::vector<int>& y, const CvPlan& plan);

struct EvalReport {
  std::string dataset;      // task, e.g. a corpus name
  std::string aggregation;  // how the rows were built
  std::string system;       // which embedding model
  std::vector<std::string> labels;
  int runs = 0;
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> fold_kappa;  // runs x folds
  double mean_kappa = 0;
  double mean_accuracy = 0;
  ConfusionMatrix confusion_total;
  std::string fingerprint;

  std::vector<double> flat_kappa() const;
};

// Throws TooFewRows when a label has fewer rows than folds and
// DegenerateData with fewer than two labels. Folds run on `jobs` threads
// with results identical to a serial run.
EvalReport cross_validate(const LabeledDataset& dataset,
                          const ClassifierConfig& config, const CvPlan& plan,
                          int jobs = 1);

struct TTestResult {
  double p_value = 1;
  double mean_diff = 0;
  double t = 0;
  int n = 0;
  bool significant = false;  // p < 0.05
};

inline constexpr double kSignificanceLevel = 0.05;

// Paired two-tailed t-test on a - b with n - 1 degrees of freedom. All-zero
// differences give p = 1; constant nonzero differences give p = 0.
TTestResult paired_ttest(const std::vector<double>& a, const std::vector<double>& b);

// Pairs per-fold kappas. Throws MismatchedFolds unless both reports come
// from the same partitions.
TTestResult compare_reports(const EvalReport& a, const EvalReport& b);

// dataset -> aggregation name -> mean kappa. Per dataset the five best
// names earn 5..1 points; ties go to the earlier name in the standard suite
// (unknown names after it, alphabetically). Returns a total for every name
// seen.
std::map<std::string, int> rank_aggregations(
    const std::map<std::string, std::map<std::string, double>>& per_dataset);

// Names in the order rank_aggregations breaks ties.
bool canonical_name_less(const std::string& a, const std::string& b);

struct Similarity {
  double cosine = 0;
  double euclidean = 0;
};

// Throws ZeroVector when either vector is zero and std::invalid_argument on
// a length mismatch.
Similarity vector_similarity(const Vector& u, const Vector& v);

// Line-oriented "key<TAB>value" records.
std::string format_report(const EvalReport& report);
EvalReport parse_report(const std::string& text);
void write_report(const std::filesystem::path& path, const EvalReport& report);
EvalReport read_report(const std::filesystem::path& path);

std::string format_ttest(const TTestResult& result);

}  // namespace codevec

#endif  // CODEVEC_EVALUATE_EVALUATE_H_
