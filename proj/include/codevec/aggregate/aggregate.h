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


#ifndef CODEVEC_AGGREGATE_AGGREGATE_H_
#define CODEVEC_AGGREGATE_AGGREGATE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codevec/model/model.h"
#include "codevec/obfuscate/obfuscate.h"

namespace codevec {

enum class SelectionMode { kAll, kTopK, kRandomK };

struct SelectionSpec {
  SelectionMode mode = SelectionMode::kAll;
  int k = 1;
  std::uint64_t seed = 0;

  void validate() const;
  // "all", "top<K>" or "random<K>".
  std::string name() const;
  static SelectionSpec parse(std::string_view text, std::uint64_t seed = 0);
};

enum class AggFn { kMin, kMax, kSum, kMean, kMedian, kStddev };

class AggregationSpec {
 public:
  // Sorts into canonical order. Throws std::invalid_argument on an empty
  // list or duplicates.
  explicit AggregationSpec(std::vector<AggFn> functions);

  // Accepts camelCase concatenations in any order, e.g. "meanMin",
  // "minMeanMax"; "std" is an alias of "stddev".
  static AggregationSpec parse(std::string_view name);

  const std::vector<AggFn>& functions() const { return functions_; }
  // Canonical camelCase name, e.g. "minMean".
  std::string name() const;
  std::size_t width(std::size_t d_code) const {
    return functions_.size() * d_code;
  }

  friend bool operator==(const AggregationSpec&, const AggregationSpec&) = default;

 private:
  std::vector<AggFn> functions_;
};

// Six singletons, fifteen pairs, {min, max, mean} and all six.
std::vector<AggregationSpec> standard_agg_suite();

struct MethodVector {
  Vector vector;
  int line_count = 1;
};

// all: the input. topK: the K longest methods, earlier wins ties. randomK:
// seeded sample without replacement. Chosen methods keep input order and K
// at or above the count returns the input.
std::vector<Vector> select_methods(const std::vector<MethodVector>& methods,
                                   const SelectionSpec& spec);

// Column-wise statistics, one d_code block per function in canonical order.
// Standard deviation divides by n; the median of an even count averages the
// two middle values.
Vector aggregate_vectors(const std::vector<Vector>& vectors,
                         const AggregationSpec& spec);

class NoMethods : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyClass : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MethodEmbedding {
  std::string name;
  int line_count = 1;
  Vector vector;
};

// Embeds every extractable method. With `obfuscation` set, the unit is
// renamed first (same stream rules as obfuscate_unit), mirroring the
// preprocessing the model was trained with.
std::vector<MethodEmbedding> embed_methods(
    const java::SourceUnit& unit, const Checkpoint& model,
    const std::optional<ObfuscationScheme>& obfuscation, std::uint64_t seed);

struct EmbedOptions {
  SelectionSpec selection;
  std::optional<ObfuscationScheme> obfuscation;
  std::uint64_t seed = 0;  // extraction cap and randomK streams
};

struct ClassEmbedding {
  Vector values;
  std::string label;
  std::string source_path;
};

// Throws NoMethods when the unit has no embeddable method.
ClassEmbedding embed_file(const java::SourceUnit& unit, const Checkpoint& model,
                          const EmbedOptions& options,
                          const AggregationSpec& aggregation,
                          const std::string& label);

// embed_file(a) - embed_file(b).
ClassEmbedding embed_pair_difference(const java::SourceUnit& a,
                                     const java::SourceUnit& b,
                                     const Checkpoint& model,
                                     const EmbedOptions& options,
                                     const AggregationSpec& aggregation,
                                     const std::string& label);

struct LabeledDataset {
  std::vector<ClassEmbedding> rows;
  std::size_t feature_width = 0;
  std::vector<std::string> labels;
};

struct DatasetStats {
  int files = 0;
  int parse_failures = 0;
  int without_methods = 0;
  int downsampled = 0;  // rows dropped by the per-class cap
};

struct DatasetBuild {
  // One dataset per requested aggregation, same rows in the same order.
  std::vector<LabeledDataset> datasets;
  DatasetStats stats;
};

struct PairRecord {
  std::string label;
  std::string path_a;
  std::string path_b;
};

// "label<TAB>pathA<TAB>pathB" lines; blank lines and '#' comments skipped.
std::vector<PairRecord> read_pair_manifest(const std::filesystem::path& path);

// corpus/<label>/**/*.java. Labels are the sorted first-level directories.
// Rows are sorted by source path and, per label, downsampled to
// per_class_cap with a stream derived from (seed, label). Throws EmptyClass
// when a label has no embeddable file.
DatasetBuild build_datasets(const std::filesystem::path& corpus,
                            const Checkpoint& model, const EmbedOptions& options,
                            const std::vector<AggregationSpec>& aggregations,
                            int per_class_cap, int jobs = 1);

// Pair mode: each manifest line yields embed(A) - embed(B). Relative paths
// resolve against `base`. Pairs with an unusable side are skipped.
DatasetBuild build_pair_datasets(const std::vector<PairRecord>& pairs,
                                 const std::filesystem::path& base,
                                 const Checkpoint& model,
                                 const EmbedOptions& options,
                                 const std::vector<AggregationSpec>& aggregations,
                                 int per_class_cap, int jobs = 1);

// Header "f0,...,f{w-1},label"; numbers in shortest round-trip form; labels
// quoted per RFC 4180 when needed.
std::string dataset_csv(const LabeledDataset& dataset);
void write_dataset_csv(const std::filesystem::path& path,
                       const LabeledDataset& dataset);
// Source paths are not stored in the CSV and come back empty.
LabeledDataset read_dataset_csv(const std::filesystem::path& path);

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace codevec

#endif  // CODEVEC_AGGREGATE_AGGREGATE_H_
