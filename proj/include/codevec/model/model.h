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


#ifndef CODEVEC_MODEL_MODEL_H_
#define CODEVEC_MODEL_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "codevec/common/random.h"
#include "codevec/pathctx/pathctx.h"

namespace codevec {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyBag : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModelConfig {
  int d_emb = 128;
  int max_contexts = 200;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 32;
  int epochs = 20;
  int patience = 3;
  double validation_fraction = 0.2;
  bool dropout = false;
  double dropout_rate = 0.25;
  double init_scale = 0.05;
  std::uint64_t seed = 0;

  int d_code() const { return 3 * d_emb; }
  // Throws ConfigError for nonpositive sizes or rates.
  void validate() const;
};

struct ModelParams {
  Matrix token_emb;   // |tokens| x d_emb
  Matrix path_emb;    // |paths| x d_emb
  Matrix w;           // d_code x d_code
  Vector a;           // d_code
  Matrix target_emb;  // |targets| x d_code

  int d_emb() const { return static_cast<int>(token_emb.cols()); }
  int d_code() const { return static_cast<int>(w.rows()); }

  static ModelParams zeros(int tokens, int paths, int targets, int d_emb);
  // Every entry uniform in (-scale, scale).
  static ModelParams random(int tokens, int paths, int targets, int d_emb,
                            double scale, Rng& rng);

  // Calls fn(tensor) on the five tensors in a fixed order.
  template <typename Fn>
  void for_each(Fn&& fn) {
    fn(token_emb);
    fn(path_emb);
    fn(w);
    fn(a);
    fn(target_emb);
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    fn(token_emb);
    fn(path_emb);
    fn(w);
    fn(a);
    fn(target_emb);
  }
};

struct ForwardResult {
  Vector code;       // v, length d_code
  Vector attention;  // one weight per context; 0 for padding
  Vector probs;      // softmax over targets
};

// A context whose three ids are all Vocabulary::kPad is padding: it is
// masked out of the attention softmax. Throws EmptyBag when no real
// context remains, std::out_of_range for ids outside the tables.
ForwardResult forward(const ModelParams& params, const IdSample& sample);

// Mean cross-entropy over the batch and its exact gradient. The gradient has
// the same layout as ModelParams. `dropout_rng` enables dropout on the
// context vectors at `dropout_rate` when non-null.
double loss_and_grads(const ModelParams& params,
                      const std::vector<const IdSample*>& batch,
                      ModelParams& grads, Rng* dropout_rng = nullptr,
                      double dropout_rate = 0.0);

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0;
  double validation_loss = 0;
  double validation_accuracy = 0;
  double validation_f1 = 0;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochMetrics> history;
  int best_epoch = 0;  // 0 when no epoch ran
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> validation_indices;
};

// Seeded partition of [0, n). With n < 2 or fraction 0 the validation set
// is the training set.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_train_validation(std::size_t n, double fraction, std::uint64_t seed);

// Adam on minibatches; keeps the parameters of the epoch with the best
// validation subtoken F1 and stops after `patience` epochs without
// improvement. Samples whose target is <unk> are not trained on. Runs on one
// thread and is bitwise reproducible for a given seed.
TrainResult train(const ModelConfig& config, const std::vector<IdSample>& samples,
                  const Vocabularies& vocab);

Vector embed_method(const ModelParams& params, const IdSample& sample);

// k most probable targets, descending; ties keep vocabulary order.
std::vector<std::pair<std::string, double>> predict_name(
    const ModelParams& params, const IdSample& sample, int k,
    const Vocabulary& targets);

struct Checkpoint {
  ModelConfig config;
  ExtractionLimits limits;
  std::string obfuscation = "none";
  Vocabularies vocab;
  ModelParams params;
};

// Binary container: magic, version, config, vocabularies, then tensors as
// little-endian float32. Loading widens to double.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);
// FNV-1a-64 of the file bytes, as 16 hex digits.
std::string checkpoint_hash(const std::filesystem::path& path);

}  // namespace codevec

#endif  // CODEVEC_MODEL_MODEL_H_
