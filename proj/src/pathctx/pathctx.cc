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


#include "codevec/pathctx/pathctx.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "codevec/common/files.h"

namespace codevec {

using java::Ast;
using java::NodeId;

namespace {

bool is_declaration_name(const Ast& ast, NodeId leaf, NodeId method) {
  return ast[leaf].kind == java::NodeKind::kSimpleName &&
         ast[leaf].parent == method;
}

std::string sanitize(std::string_view field) {
  std::string out(field);
  for (char& c : out) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') c = '_';
  }
  return out;
}

void collect(const std::vector<MethodSample>& samples, VocabularyCounts& out) {
  struct FileSets {
    std::set<std::string> tokens, paths, targets;
  };
  std::map<std::string, FileSets> files;
  for (const MethodSample& s : samples) {
    FileSets& f = files[s.source_path];
    f.targets.insert(s.target_name);
    for (const PathContext& c : s.contexts) {
      f.tokens.insert(c.start);
      f.tokens.insert(c.end);
      f.paths.insert(c.path);
    }
  }
  for (const auto& [path, f] : files) {
    for (const auto& t : f.tokens) ++out.tokens[t];
    for (const auto& p : f.paths) ++out.paths[p];
    for (const auto& t : f.targets) ++out.targets[t];
  }
}

Vocabulary select(const std::map<std::string, std::int64_t>& counts,
                  int min_count) {
  std::vector<std::pair<std::int64_t, const std::string*>> kept;
  for (const auto& [s, n] : counts) {
    if (n >= min_count) kept.emplace_back(n, &s);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  Vocabulary v;
  for (const auto& [n, s] : kept) v.add(*s);
  return v;
}

}  // namespace

void ExtractionLimits::validate() const {
  if (max_length < 1 || max_width < 0 || max_contexts < 1) {
    throw std::invalid_argument(
        "extraction limits must satisfy max_length >= 1, max_width >= 0, "
        "max_contexts >= 1");
  }
}

std::vector<PathContext> extract_contexts(const java::SourceUnit& unit,
                                          const java::MethodDecl& method,
                                          int max_length, int max_width) {
  const Ast& ast = unit.ast;
  const std::vector<NodeId> leaves = ast.leaves(method.node);
  if (leaves.size() < 2) {
    throw EmptyMethod("method '" + method.name + "' has fewer than 2 leaves");
  }
  // Leaf-to-method chains, leaf first.
  std::vector<std::vector<NodeId>> chains(leaves.size());
  std::vector<std::string> tokens(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (NodeId n = leaves[i];; n = ast[n].parent) {
      chains[i].push_back(n);
      if (n == method.node) break;
    }
    tokens[i] = is_declaration_name(ast, leaves[i], method.node)
                    ? std::string(kMethodNameToken)
                    : *ast[leaves[i]].token;
  }
  std::vector<PathContext> out;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const auto& a = chains[i];
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      const auto& b = chains[j];
      std::size_t common = 0;
      while (common < a.size() && common < b.size() &&
             a[a.size() - 1 - common] == b[b.size() - 1 - common]) {
        ++common;
      }
      const std::size_t up = a.size() - common;
      const std::size_t down = b.size() - common;
      if (static_cast<long long>(up + down) > max_length) continue;
      const long long width =
          std::llabs(static_cast<long long>(ast.child_index(a[up - 1])) -
                     static_cast<long long>(ast.child_index(b[down - 1])));
      if (width > max_width) continue;

      std::string path;
      for (std::size_t k = 0; k < up; ++k) {
        path += java::kind_name(ast[a[k]].kind);
        path += kUp;
      }
      path += java::kind_name(ast[a[up]].kind);
      for (std::size_t k = down; k-- > 0;) {
        path += kDown;
        path += java::kind_name(ast[b[k]].kind);
      }
      out.push_back({tokens[i], std::move(path), tokens[j]});
    }
  }
  return out;
}

std::vector<PathContext> cap_contexts(std::vector<PathContext> contexts,
                                      int max_contexts, Rng& rng) {
  if (max_contexts < 1) throw std::invalid_argument("max_contexts must be >= 1");
  const auto cap = static_cast<std::size_t>(max_contexts);
  if (contexts.size() <= cap) return contexts;
  std::vector<PathContext> out;
  out.reserve(cap);
  for (std::size_t i : rng.sample_indices(contexts.size(), cap)) {
    out.push_back(std::move(contexts[i]));
  }
  return out;
}

std::vector<std::string> split_target(std::string_view name) {
  enum class Cls { kNone, kLower, kUpper, kDigit };
  auto classify = [](unsigned char c) {
    if (c >= '0' && c <= '9') return Cls::kDigit;
    if (c >= 'A' && c <= 'Z') return Cls::kUpper;
    if ((c >= 'a' && c <= 'z') || c >= 0x80) return Cls::kLower;
    return Cls::kNone;
  };
  std::vector<std::string> out;
  std::string current;
  Cls last = Cls::kNone;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const auto c = static_cast<unsigned char>(name[i]);
    const Cls cls = classify(c);
    switch (cls) {
      case Cls::kNone:
        flush();
        break;
      case Cls::kDigit:
        if (last != Cls::kDigit) flush();
        break;
      case Cls::kUpper: {
        const bool next_lower =
            i + 1 < name.size() &&
            classify(static_cast<unsigned char>(name[i + 1])) == Cls::kLower;
        if (last == Cls::kLower || last == Cls::kDigit ||
            (last == Cls::kUpper && next_lower)) {
          flush();
        }
        break;
      }
      case Cls::kLower:
        if (last == Cls::kDigit) flush();
        break;
    }
    if (cls != Cls::kNone) {
      current += static_cast<char>(std::tolower(c));
    }
    last = cls;
  }
  flush();
  if (out.empty()) {
    std::string lowered(name);
    for (char& ch : lowered) {
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    out.push_back(std::move(lowered));
  }
  return out;
}

std::vector<MethodSample> make_samples(const java::SourceUnit& unit,
                                       const ExtractionLimits& limits,
                                       std::uint64_t seed) {
  limits.validate();
  std::vector<MethodSample> out;
  const std::uint64_t file_seed = derive_seed(seed, unit.path);
  std::uint64_t position = 0;
  for (const java::ClassDecl& cls : unit.classes) {
    for (const java::MethodDecl& m : cls.methods) {
      const std::uint64_t index = position++;
      if (m.is_constructor || !m.has_body) continue;
      std::vector<PathContext> contexts;
      try {
        contexts = extract_contexts(unit, m, limits.max_length, limits.max_width);
      } catch (const EmptyMethod&) {
        continue;
      }
      if (contexts.empty()) continue;
      Rng rng(derive_seed(file_seed, index));
      MethodSample s;
      s.target_name = m.name;
      s.target_subtokens = split_target(m.name);
      s.contexts = cap_contexts(std::move(contexts), limits.max_contexts, rng);
      s.line_count = m.line_count;
      s.source_path = unit.path;
      out.push_back(std::move(s));
    }
  }
  return out;
}

Vocabulary::Vocabulary() {
  add("<unk>");
  add("<pad>");
}

std::int32_t Vocabulary::add(const std::string& s) {
  auto it = ids_.find(s);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::int32_t>(strings_.size());
  strings_.push_back(s);
  ids_.emplace(s, id);
  return id;
}

std::int32_t Vocabulary::lookup(const std::string& s) const {
  auto it = ids_.find(s);
  return it == ids_.end() ? kUnk : it->second;
}

void VocabularyCounts::merge(const VocabularyCounts& other) {
  for (const auto& [s, n] : other.tokens) tokens[s] += n;
  for (const auto& [s, n] : other.paths) paths[s] += n;
  for (const auto& [s, n] : other.targets) targets[s] += n;
}

VocabularyCounts count_vocabulary(const std::vector<MethodSample>& samples) {
  VocabularyCounts counts;
  collect(samples, counts);
  return counts;
}

Vocabularies build_vocabulary(const VocabularyCounts& counts, int min_count) {
  if (counts.targets.empty()) {
    throw std::invalid_argument("cannot build a vocabulary from no samples");
  }
  Vocabularies v;
  v.tokens = select(counts.tokens, min_count);
  v.paths = select(counts.paths, min_count);
  v.targets = select(counts.targets, min_count);
  v.min_count = min_count;
  return v;
}

Vocabularies build_vocabulary(const std::vector<MethodSample>& samples,
                              int min_count) {
  return build_vocabulary(count_vocabulary(samples), min_count);
}

IdSample to_ids(const MethodSample& sample, const Vocabularies& vocab) {
  IdSample out;
  out.target = vocab.targets.lookup(sample.target_name);
  out.contexts.reserve(sample.contexts.size());
  for (const PathContext& c : sample.contexts) {
    out.contexts.push_back({vocab.tokens.lookup(c.start),
                            vocab.paths.lookup(c.path),
                            vocab.tokens.lookup(c.end)});
  }
  return out;
}

std::string format_dump_line(const MethodSample& sample) {
  std::string line = sanitize(sample.target_name);
  for (const PathContext& c : sample.contexts) {
    line += ' ';
    line += sanitize(c.start);
    line += ',';
    line += sanitize(c.path);
    line += ',';
    line += sanitize(c.end);
  }
  return line;
}

void write_dump(const std::filesystem::path& path,
                const std::vector<MethodSample>& samples) {
  std::string dump;
  std::string meta;
  for (const MethodSample& s : samples) {
    dump += format_dump_line(s);
    dump += '\n';
    meta += s.source_path;
    meta += '\t';
    meta += std::to_string(s.line_count);
    meta += '\n';
  }
  write_text_file(path, dump);
  write_text_file(path.string() + ".meta", meta);
}

std::vector<MethodSample> read_dump(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<MethodSample> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    MethodSample s;
    fields >> s.target_name;
    std::string ctx;
    while (fields >> ctx) {
      const auto first = ctx.find(',');
      const auto last = ctx.rfind(',');
      if (first == std::string::npos || first == last) {
        throw IoError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed context '" + ctx + "'");
      }
      s.contexts.push_back({ctx.substr(0, first),
                            ctx.substr(first + 1, last - first - 1),
                            ctx.substr(last + 1)});
    }
    s.target_subtokens = split_target(s.target_name);
    out.push_back(std::move(s));
  }
  const std::filesystem::path meta = path.string() + ".meta";
  if (std::filesystem::exists(meta)) {
    std::istringstream min(read_text_file(meta));
    std::size_t i = 0;
    while (std::getline(min, line)) {
      if (line.empty()) continue;
      const auto tab = line.rfind('\t');
      if (i >= out.size() || tab == std::string::npos) {
        throw IoError("sidecar does not match dump: " + meta.string());
      }
      out[i].source_path = line.substr(0, tab);
      out[i].line_count = std::stoi(line.substr(tab + 1));
      ++i;
    }
    if (i != out.size()) {
      throw IoError("sidecar does not match dump: " + meta.string());
    }
  }
  return out;
}

}  // namespace codevec
