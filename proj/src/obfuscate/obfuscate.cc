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


#include "codevec/obfuscate/obfuscate.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "codevec/common/files.h"
#include "codevec/common/parallel.h"
#include "codevec/java/parser.h"

namespace codevec {

namespace fs = std::filesystem;
using java::SourceUnit;
using java::VariableBinding;

namespace {

constexpr int kMaxAttempts = 10000;

struct Replacement {
  std::size_t offset;
  std::size_t length;
  const std::string* text;
};

// Identifiers that a replacement must not shadow or capture: every
// identifier token of the file that is not itself a variable occurrence.
std::unordered_set<std::string> reserved_identifiers(const SourceUnit& unit) {
  std::unordered_set<std::size_t> occurrence_offsets;
  for (const VariableBinding& b : unit.bindings) {
    for (java::NodeId o : b.occurrences) {
      occurrence_offsets.insert(unit.ast[o].offset);
    }
  }
  std::unordered_set<std::string> out;
  for (const java::Token& t : java::tokenize(unit.text)) {
    if (t.type == java::TokenType::kIdentifier &&
        !occurrence_offsets.count(t.offset)) {
      out.emplace(t.text);
    }
  }
  return out;
}

}  // namespace

std::string_view mode_name(ObfuscationMode mode) {
  return mode == ObfuscationMode::kType ? "type" : "random";
}

ObfuscationMode parse_mode(std::string_view name) {
  if (name == "type") return ObfuscationMode::kType;
  if (name == "random") return ObfuscationMode::kRandom;
  throw std::invalid_argument("unknown obfuscation mode: " + std::string(name));
}

void ObfuscationScheme::validate() const {
  if (random_length < 4) {
    throw std::invalid_argument("random name length must be at least 4");
  }
}

std::string type_name_for(const VariableBinding& binding, int counter) {
  std::string type = "unk";
  if (binding.declared_type) {
    type.clear();
    for (char c : *binding.declared_type) {
      if (c == '.' || c == '[' || c == ']') {
        type += '_';
      } else {
        type += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
    }
  }
  return std::string(java::scope_name(binding.scope)) + "_" + type + "_" +
         std::to_string(counter);
}

std::string random_name(Rng& rng, int length) {
  std::string out(static_cast<std::size_t>(length), 'A');
  for (char& c : out) c = static_cast<char>('A' + rng.uniform(26));
  return out;
}

ObfuscatedUnit obfuscate_unit(const SourceUnit& unit,
                              const ObfuscationScheme& scheme) {
  scheme.validate();
  const std::unordered_set<std::string> reserved = reserved_identifiers(unit);
  std::set<std::string> taken;
  auto available = [&](const std::string& name) {
    return !reserved.count(name) && !taken.count(name);
  };

  Rng rng(derive_seed(scheme.seed, unit.path));
  std::map<std::pair<java::Scope, std::string>, int> counters;
  ObfuscatedUnit out;
  out.renames.entries.reserve(unit.bindings.size());
  for (std::size_t i = 0; i < unit.bindings.size(); ++i) {
    const VariableBinding& b = unit.bindings[i];
    std::string name;
    int attempt = 0;
    if (scheme.mode == ObfuscationMode::kType) {
      int& counter = counters[{b.scope, b.declared_type.value_or("")}];
      do {
        name = type_name_for(b, ++counter);
      } while (!available(name) && ++attempt < kMaxAttempts);
    } else {
      do {
        name = random_name(rng, scheme.random_length);
      } while (!available(name) && ++attempt < kMaxAttempts);
    }
    if (attempt == kMaxAttempts) {
      throw ObfuscationError("no free replacement name for '" + b.name +
                             "' in " + unit.path);
    }
    taken.insert(name);
    out.renames.entries.push_back({i, b.name, std::move(name)});
  }

  std::vector<Replacement> edits;
  for (const RenameEntry& e : out.renames.entries) {
    for (java::NodeId o : unit.bindings[e.binding].occurrences) {
      const java::AstNode& leaf = unit.ast[o];
      edits.push_back({leaf.offset, leaf.length, &e.replacement});
    }
  }
  std::sort(edits.begin(), edits.end(),
            [](const Replacement& a, const Replacement& b) {
              return a.offset < b.offset;
            });
  std::size_t cursor = 0;
  for (const Replacement& r : edits) {
    out.text.append(unit.text, cursor, r.offset - cursor);
    out.text += *r.text;
    cursor = r.offset + r.length;
  }
  out.text.append(unit.text, cursor);
  return out;
}

std::string ObfuscationReport::to_json() const {
  nlohmann::ordered_json j;
  j["processed"] = processed;
  j["skipped"] = skipped;
  j["skipped_files"] = skipped_files;
  nlohmann::ordered_json errs = nlohmann::ordered_json::array();
  for (const auto& [path, message] : errors) {
    errs.push_back({{"path", path}, {"error", message}});
  }
  j["errors"] = std::move(errs);
  return j.dump();
}

ObfuscationReport obfuscate_tree(const fs::path& input_dir,
                                 const fs::path& output_dir,
                                 const ObfuscationScheme& scheme, int jobs) {
  scheme.validate();
  if (!fs::is_directory(input_dir)) {
    throw IoError("input directory does not exist: " + input_dir.string());
  }
  const std::vector<fs::path> files = list_files(input_dir);
  enum class Outcome { kRewritten, kSkipped, kCopied, kError };
  struct Result {
    Outcome outcome = Outcome::kCopied;
    std::string message;
  };
  std::vector<Result> results(files.size());
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    const std::string key = relative_key(files[i], input_dir);
    Result& r = results[i];
    try {
      std::string text = read_text_file(files[i]);
      if (files[i].extension() == ".java") {
        try {
          const SourceUnit unit = java::parse_file(text, key);
          text = obfuscate_unit(unit, scheme).text;
          r.outcome = Outcome::kRewritten;
        } catch (const java::ParseError& e) {
          r.outcome = Outcome::kSkipped;
          r.message = e.what();
        }
      }
      write_text_file(output_dir / key, text);
    } catch (const IoError& e) {
      r.outcome = Outcome::kError;
      r.message = e.what();
    }
  });

  ObfuscationReport report;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string key = relative_key(files[i], input_dir);
    switch (results[i].outcome) {
      case Outcome::kRewritten:
        ++report.processed;
        break;
      case Outcome::kSkipped:
        ++report.skipped;
        report.skipped_files.push_back(key);
        spdlog::warn("{}: {} (copied verbatim)", key, results[i].message);
        break;
      case Outcome::kError:
        report.errors.emplace_back(key, results[i].message);
        spdlog::error("{}: {}", key, results[i].message);
        break;
      case Outcome::kCopied:
        break;
    }
  }
  return report;
}

}  // namespace codevec
