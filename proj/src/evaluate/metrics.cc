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


#include "codevec/evaluate/metrics.h"

#include <algorithm>

#include "codevec/pathctx/pathctx.h"

namespace codevec {

double kappa(const ConfusionMatrix& confusion) {
  const std::size_t k = confusion.size();
  if (k == 0) throw EmptyMatrix("confusion matrix is empty");
  std::vector<double> rows(k, 0.0);
  std::vector<double> cols(k, 0.0);
  double total = 0;
  double trace = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (confusion[i].size() != k) {
      throw std::invalid_argument("confusion matrix must be square");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (confusion[i][j] < 0) {
        throw std::invalid_argument("confusion counts must be nonnegative");
      }
      const auto c = static_cast<double>(confusion[i][j]);
      rows[i] += c;
      cols[j] += c;
      total += c;
      if (i == j) trace += c;
    }
  }
  if (total == 0) throw EmptyMatrix("confusion matrix has no counts");
  const double po = trace / total;
  double pe = 0;
  for (std::size_t i = 0; i < k; ++i) pe += rows[i] * cols[i];
  pe /= total * total;
  if (pe == 1.0) return po == 1.0 ? 1.0 : 0.0;
  return (po - pe) / (1.0 - pe);
}

PredictionMetrics name_prediction_f1(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  PredictionMetrics m;
  for (const auto& [truth, predicted] : pairs) {
    std::vector<std::string> t = split_target(truth);
    std::vector<std::string> p = split_target(predicted);
    std::sort(t.begin(), t.end());
    std::sort(p.begin(), p.end());
    std::vector<std::string> common;
    std::set_intersection(t.begin(), t.end(), p.begin(), p.end(),
                          std::back_inserter(common));
    const auto tp = static_cast<std::int64_t>(common.size());
    m.true_positives += tp;
    m.false_positives += static_cast<std::int64_t>(p.size()) - tp;
    m.false_negatives += static_cast<std::int64_t>(t.size()) - tp;
  }
  const auto tp = static_cast<double>(m.true_positives);
  if (m.true_positives + m.false_positives > 0) {
    m.precision = tp / static_cast<double>(m.true_positives + m.false_positives);
  }
  if (m.true_positives + m.false_negatives > 0) {
    m.recall = tp / static_cast<double>(m.true_positives + m.false_negatives);
  }
  if (m.precision + m.recall > 0) {
    m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

}  // namespace codevec
