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


#ifndef CODEVEC_OBFUSCATE_OBFUSCATE_H_
#define CODEVEC_OBFUSCATE_OBFUSCATE_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codevec/common/random.h"
#include "codevec/java/ast.h"

namespace codevec {

enum class ObfuscationMode { kType, kRandom };

std::string_view mode_name(ObfuscationMode mode);
// Accepts "type" or "random"; throws std::invalid_argument otherwise.
ObfuscationMode parse_mode(std::string_view name);

struct ObfuscationScheme {
  ObfuscationMode mode = ObfuscationMode::kType;
  int random_length = 8;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when random_length < 4.
  void validate() const;
};

class ObfuscationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RenameEntry {
  std::size_t binding;  // index into SourceUnit::bindings
  std::string original;
  std::string replacement;
};

// One entry per binding, in binding order.
struct RenameMap {
  std::vector<RenameEntry> entries;
};

struct ObfuscatedUnit {
  std::string text;
  RenameMap renames;
};

// "<scope>_<type>_<counter>", e.g. param_string_1. The type is lowercased
// with '.', '[' and ']' replaced by '_'; a missing type renders as "unk".
std::string type_name_for(const java::VariableBinding& binding, int counter);

// Uniform string over A-Z.
std::string random_name(Rng& rng, int length);

// Renames every variable binding in the unit. Only binding occurrences are
// rewritten; all other bytes of the source are preserved. Random mode draws
// from a stream derived from (scheme.seed, unit.path).
ObfuscatedUnit obfuscate_unit(const java::SourceUnit& unit,
                              const ObfuscationScheme& scheme);

struct ObfuscationReport {
  int processed = 0;
  int skipped = 0;
  // Files that did not parse and were copied verbatim, relative to the input.
  std::vector<std::string> skipped_files;
  // Per-file IO failures as (relative path, message).
  std::vector<std::pair<std::string, std::string>> errors;

  std::string to_json() const;
};

// Mirrors input_dir into output_dir with every .java file obfuscated. Files
// that fail to parse, and non-Java files, are copied unchanged. Per-file
// streams are keyed by the path relative to input_dir, so the result does
// not depend on `jobs` or on where the tree lives.
ObfuscationReport obfuscate_tree(const std::filesystem::path& input_dir,
                                 const std::filesystem::path& output_dir,
                                 const ObfuscationScheme& scheme, int jobs = 1);

}  // namespace codevec

#endif  // CODEVEC_OBFUSCATE_OBFUSCATE_H_
