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


#ifndef CODEVEC_CLI_PIPELINE_H_
#define CODEVEC_CLI_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codevec/evaluate/evaluate.h"
#include "codevec/model/model.h"
#include "codevec/obfuscate/obfuscate.h"
#include "codevec/pathctx/pathctx.h"

namespace codevec {

inline constexpr const char* kToolVersion = "0.1.0";

struct CorpusSamples {
  std::vector<MethodSample> samples;  // ordered by source path, then method
  int files = 0;
  int parse_failures = 0;
};

// Parses every .java file under `root` (optionally renaming variables
// first) and extracts method samples. Files that fail to parse are skipped
// with a warning.
CorpusSamples extract_corpus(const std::filesystem::path& root,
                             const ExtractionLimits& limits,
                             const std::optional<ObfuscationScheme>& obfuscation,
                             std::uint64_t seed, int jobs = 1);

// Top-1 predictions of `model` scored against the true names.
PredictionMetrics evaluate_predictions(const Checkpoint& model,
                                       const std::vector<MethodSample>& samples);

struct CrossObfuscationReport {
  PredictionMetrics plain;
  PredictionMetrics obfuscated;
  int methods = 0;

  double drop() const { return plain.f1 - obfuscated.f1; }
};

// Name-prediction F1 on the corpus as-is and after random renaming. Throws
// std::invalid_argument when the corpus has no extractable method.
CrossObfuscationReport cross_obfuscation(const Checkpoint& model,
                                         const std::filesystem::path& corpus,
                                         const ObfuscationScheme& scheme,
                                         std::uint64_t seed, int jobs = 1);

struct TrainedCheckpoint {
  Checkpoint checkpoint;
  TrainResult result;
};

// Builds vocabularies from the samples, trains, and packages a checkpoint.
TrainedCheckpoint train_checkpoint(const std::vector<MethodSample>& samples,
                                   const ModelConfig& config,
                                   const ExtractionLimits& limits,
                                   const std::string& obfuscation, int min_count);

// The renaming a checkpoint was trained with, or nullopt for "none".
// `length` and `seed` complete the scheme.
std::optional<ObfuscationScheme> checkpoint_obfuscation(const Checkpoint& model,
                                                        int length,
                                                        std::uint64_t seed);

// "kind<TAB>string<TAB>documentFrequency" lines for tokens, paths, targets.
std::string vocabulary_stats(const VocabularyCounts& counts);

// Per-method embeddings as CSV "sourcePath,methodName,v0,...".
std::string method_embeddings_csv(const std::vector<MethodSample>& samples,
                                  const Checkpoint& model);

// Pretty JSON with a trailing newline; no timestamps, so reruns match.
void write_manifest(const std::filesystem::path& path,
                    const nlohmann::ordered_json& manifest);
// "<artifact>.manifest.json" next to the artifact.
std::filesystem::path manifest_path(const std::filesystem::path& artifact);

// Runs the command line and returns the process exit code. Tables go to
// `out`, fatal errors to `err`, warnings to the log.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace codevec

#endif  // CODEVEC_CLI_PIPELINE_H_
