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


#ifndef CODEVEC_EVALUATE_METRICS_H_
#define CODEVEC_EVALUATE_METRICS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace codevec {

class EmptyMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ConfusionMatrix = std::vector<std::vector<std::int64_t>>;

// Cohen's kappa of a square confusion matrix (rows: truth, columns:
// prediction). When chance agreement is 1 the result is 1 for perfect
// agreement and 0 otherwise.
double kappa(const ConfusionMatrix& confusion);

struct PredictionMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::int64_t true_positives = 0;
  std::int64_t false_positives = 0;
  std::int64_t false_negatives = 0;
};

// Micro-averaged subtoken precision, recall and F1 over (truth, prediction)
// name pairs. Subtokens are compared as multisets.
PredictionMetrics name_prediction_f1(
    const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace codevec

#endif  // CODEVEC_EVALUATE_METRICS_H_
