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


#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "codevec/common/random.h"
#include "codevec/evaluate/evaluate.h"

namespace codevec {

namespace {

// One binary problem by dual coordinate descent. `x` has the bias column
// appended when enabled; returns the weights and writes the final gap.
Vector solve_binary(const Matrix& x, const std::vector<std::size_t>& rows,
                    const std::vector<int>& sign, const ClassifierConfig& config,
                    std::uint64_t seed, double* gap_out) {
  const double diag = 1.0 / (2.0 * config.c);
  const std::size_t n = rows.size();
  Vector w = Vector::Zero(x.cols());
  std::vector<double> alpha(n, 0.0);
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = x.row(rows[i]).squaredNorm() + diag;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  double gap = 0;
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      const auto row = x.row(rows[i]);
      const double g = sign[i] * row.dot(w) - 1.0 + diag * alpha[i];
      const double pg = alpha[i] == 0 ? std::min(g, 0.0) : g;
      if (pg == 0) continue;
      const double next = std::max(alpha[i] - g / q[i], 0.0);
      w += ((next - alpha[i]) * sign[i]) * row.transpose();
      alpha[i] = next;
    }
    double primal = 0.5 * w.squaredNorm();
    double dual = 0.5 * w.squaredNorm();
    for (std::size_t i = 0; i < n; ++i) {
      const double slack = std::max(0.0, 1.0 - sign[i] * x.row(rows[i]).dot(w));
      primal += config.c * slack * slack;
      dual += 0.5 * diag * alpha[i] * alpha[i] - alpha[i];
    }
    // dual holds the minimized dual, whose negation bounds the optimum below.
    gap = primal + dual;
    if (gap <= config.tolerance * (1.0 + std::abs(dual))) break;
    if (iter + 1 == config.max_iterations) {
      spdlog::warn("linear solver stopped at {} iterations, duality gap {}",
                   config.max_iterations, gap);
    }
  }
  *gap_out = gap;
  return w;
}

Matrix with_bias(const Matrix& x, bool bias) {
  if (!bias) return x;
  Matrix out(x.rows(), x.cols() + 1);
  out.leftCols(x.cols()) = x;
  out.col(x.cols()).setOnes();
  return out;
}

}  // namespace

void ClassifierConfig::validate() const {
  if (!(c > 0)) throw std::invalid_argument("C must be positive");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

Design to_design(const LabeledDataset& dataset) {
  Design d;
  d.labels = dataset.labels;
  for (const ClassEmbedding& row : dataset.rows) {
    if (std::find(d.labels.begin(), d.labels.end(), row.label) == d.labels.end()) {
      d.labels.push_back(row.label);
    }
  }
  const auto width = static_cast<Eigen::Index>(dataset.feature_width);
  d.x.resize(static_cast<Eigen::Index>(dataset.rows.size()), width);
  for (std::size_t r = 0; r < dataset.rows.size(); ++r) {
    const ClassEmbedding& row = dataset.rows[r];
    if (row.values.size() != width) {
      throw std::invalid_argument("row " + std::to_string(r) + " has width " +
                                  std::to_string(row.values.size()));
    }
    d.x.row(static_cast<Eigen::Index>(r)) = row.values.transpose();
    d.y.push_back(static_cast<int>(
        std::find(d.labels.begin(), d.labels.end(), row.label) - d.labels.begin()));
  }
  return d;
}

Vector LinearModel::decision(const Eigen::Ref<const Vector>& x) const {
  return weights * x + biases;
}

int LinearModel::predict(const Eigen::Ref<const Vector>& x) const {
  const Vector d = decision(x);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < d.size(); ++k) {
    if (d[k] > d[best]) best = k;
  }
  return static_cast<int>(best);
}

double svm_primal(const Vector& w, const Matrix& x, const std::vector<int>& sign,
                  double c) {
  double total = 0.5 * w.squaredNorm();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double slack = std::max(0.0, 1.0 - sign[static_cast<std::size_t>(i)] * x.row(i).dot(w));
    total += c * slack * slack;
  }
  return total;
}

LinearModel train_linear(const Design& design, const std::vector<std::size_t>& rows,
                         const ClassifierConfig& config) {
  config.validate();
  std::vector<bool> present(design.labels.size(), false);
  for (std::size_t r : rows) present[static_cast<std::size_t>(design.y[r])] = true;
  if (std::count(present.begin(), present.end(), true) < 2) {
    throw DegenerateData("training rows carry fewer than two labels");
  }
  const Matrix x = with_bias(design.x, config.bias);
  const auto classes = static_cast<Eigen::Index>(design.labels.size());
  LinearModel model;
  model.weights = Matrix::Zero(classes, design.x.cols());
  model.biases = Vector::Zero(classes);
  std::vector<int> sign(rows.size());
  for (Eigen::Index k = 0; k < classes; ++k) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      sign[i] = design.y[rows[i]] == k ? 1 : -1;
    }
    double gap = 0;
    const Vector w = solve_binary(x, rows, sign, config,
                                  derive_seed(0x11ea5ULL, static_cast<std::uint64_t>(k)), &gap);
    model.weights.row(k) = w.head(design.x.cols()).transpose();
    if (config.bias) model.biases[k] = w[design.x.cols()];
    model.duality_gaps.push_back(gap);
  }
  return model;
}

LinearModel train_linear(const Design& design, const ClassifierConfig& config) {
  std::vector<std::size_t> rows(design.y.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return train_linear(design, rows, config);
}

}  // namespace codevec
