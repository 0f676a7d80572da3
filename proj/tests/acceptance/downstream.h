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

#ifndef CODEVEC_TESTS_ACCEPTANCE_DOWNSTREAM_H_
#define CODEVEC_TESTS_ACCEPTANCE_DOWNSTREAM_H_

#include <cstdint>
#include <filesystem>

#include "codevec/model/model.h"
#include "codevec/pathctx/pathctx.h"

namespace codevec::testing {

// Two-class corpus of generated files. Each class draws method templates
// from its own mix and variable names from its own pool; method names carry
// a class noun ("sumPrices" vs "sumNodes"). Test files get typos: every
// variable binding is misspelled with probability typo_rate. A clean twin of
// the test split (same files, no typos) backs the cross-obfuscation check.
struct DownstreamConfig {
  int train_files_per_class = 150;
  int test_files_per_class = 100;
  double typo_rate = 0.5;
  ModelConfig model;
  ExtractionLimits limits;
  int min_count = 2;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct ModelOutcome {
  double kappa = 0;     // cross-validated on the noisy test split
  double f1_plain = 0;  // xobf on the clean test twin
  double f1_obfuscated = 0;
  double drop() const { return f1_plain - f1_obfuscated; }
};

struct DownstreamResult {
  ModelOutcome plain;
  ModelOutcome random;
};

void write_downstream_corpus(const std::filesystem::path& root,
                             const DownstreamConfig& config);

DownstreamResult run_downstream(const std::filesystem::path& work,
                                const DownstreamConfig& config);

}  // namespace codevec::testing

#endif  // CODEVEC_TESTS_ACCEPTANCE_DOWNSTREAM_H_
