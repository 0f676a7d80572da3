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


#ifndef CODEVEC_PATHCTX_PATHCTX_H_
#define CODEVEC_PATHCTX_PATHCTX_H_

#include <climits>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codevec/common/random.h"
#include "codevec/java/ast.h"

namespace codevec {

inline constexpr std::string_view kUp = "↑";
inline constexpr std::string_view kDown = "↓";
// Stands in for the declaration's own name so the target never leaks into
// the input bag.
inline constexpr std::string_view kMethodNameToken = "METHOD_NAME";
inline constexpr int kUnlimited = INT_MAX;

struct PathContext {
  std::string start;
  std::string path;
  std::string end;

  friend bool operator==(const PathContext&, const PathContext&) = default;
  friend auto operator<=>(const PathContext&, const PathContext&) = default;
};

struct ExtractionLimits {
  int max_length = 8;  // edges between the two leaves
  int max_width = 2;   // child-index distance at the apex
  int max_contexts = 200;

  void validate() const;
};

class EmptyMethod : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One context per unordered pair of leaves under the method node, the
// earlier leaf (in source order) first. Pairs whose path is longer than
// max_length or wider than max_width are dropped. Throws EmptyMethod when the
// method has fewer than two leaves.
std::vector<PathContext> extract_contexts(const java::SourceUnit& unit,
                                          const java::MethodDecl& method,
                                          int max_length, int max_width);

// Uniform sample of max_contexts contexts without replacement, keeping the
// input order. Inputs within the cap are returned unchanged.
std::vector<PathContext> cap_contexts(std::vector<PathContext> contexts,
                                      int max_contexts, Rng& rng);

// Splits at case changes, digit runs and non-alphanumerics, lowercased:
// "toString2JSON" -> {"to", "string", "2", "json"}.
std::vector<std::string> split_target(std::string_view name);

struct MethodSample {
  std::string target_name;
  std::vector<std::string> target_subtokens;
  std::vector<PathContext> contexts;
  int line_count = 1;
  std::string source_path;
};

// Samples for every method of the unit that has a body and at least two
// leaves. Constructors are skipped. Each method's cap draws from a stream
// derived from (seed, path, method position), so the result does not depend
// on which other files are processed.
std::vector<MethodSample> make_samples(const java::SourceUnit& unit,
                                       const ExtractionLimits& limits,
                                       std::uint64_t seed);

// Dense string <-> id table with <unk> at 0 and <pad> at 1.
class Vocabulary {
 public:
  static constexpr std::int32_t kUnk = 0;
  static constexpr std::int32_t kPad = 1;

  Vocabulary();

  std::int32_t add(const std::string& s);
  std::int32_t lookup(const std::string& s) const;
  bool contains(const std::string& s) const { return ids_.count(s) != 0; }
  const std::string& at(std::int32_t id) const { return strings_.at(id); }
  std::int32_t size() const { return static_cast<std::int32_t>(strings_.size()); }
  const std::vector<std::string>& strings() const { return strings_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.strings_ == b.strings_;
  }

 private:
  std::vector<std::string> strings_;
  std::map<std::string, std::int32_t, std::less<>> ids_;
};

struct Vocabularies {
  Vocabulary tokens;
  Vocabulary paths;
  Vocabulary targets;
  int min_count = 1;
};

// Document frequencies: for every string, the number of distinct source
// files in which it occurs.
struct VocabularyCounts {
  std::map<std::string, std::int64_t> tokens;
  std::map<std::string, std::int64_t> paths;
  std::map<std::string, std::int64_t> targets;

  // Adds counts from a disjoint set of files.
  void merge(const VocabularyCounts& other);
  friend bool operator==(const VocabularyCounts&,
                         const VocabularyCounts&) = default;
};

VocabularyCounts count_vocabulary(const std::vector<MethodSample>& samples);

// Keeps strings whose frequency is at least min_count. Ids follow descending
// frequency, then byte order. Throws std::invalid_argument on empty input.
Vocabularies build_vocabulary(const VocabularyCounts& counts, int min_count);
Vocabularies build_vocabulary(const std::vector<MethodSample>& samples,
                              int min_count);

struct IdContext {
  std::int32_t start;
  std::int32_t path;
  std::int32_t end;

  friend bool operator==(const IdContext&, const IdContext&) = default;
};

struct IdSample {
  std::int32_t target = Vocabulary::kUnk;
  std::vector<IdContext> contexts;
};

IdSample to_ids(const MethodSample& sample, const Vocabularies& vocab);

// Dump format: one method per line, "target ctx ctx ..." with
// ctx = "start,path,end". Commas and whitespace inside fields become '_'.
// A sidecar "<dump>.meta" holds "sourcePath<TAB>lineCount" per line.
std::string format_dump_line(const MethodSample& sample);
void write_dump(const std::filesystem::path& path,
                const std::vector<MethodSample>& samples);
// Reads a dump and its sidecar, if present. Subtokens are recomputed from
// the target name.
std::vector<MethodSample> read_dump(const std::filesystem::path& path);

}  // namespace codevec

#endif  // CODEVEC_PATHCTX_PATHCTX_H_
