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


#include "codevec/cli/pipeline.h"

#include <spdlog/spdlog.h>

#include "codevec/aggregate/aggregate.h"
#include "codevec/common/files.h"
#include "codevec/common/parallel.h"
#include "codevec/java/parser.h"

namespace codevec {

namespace fs = std::filesystem;

CorpusSamples extract_corpus(const fs::path& root, const ExtractionLimits& limits,
                             const std::optional<ObfuscationScheme>& obfuscation,
                             std::uint64_t seed, int jobs) {
  limits.validate();
  const std::vector<fs::path> files = list_files(root, ".java");
  std::vector<std::vector<MethodSample>> per_file(files.size());
  std::vector<char> failed(files.size(), 0);
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    const std::string key = relative_key(files[i], root);
    try {
      java::SourceUnit unit = java::parse_file(read_text_file(files[i]), key);
      if (obfuscation) {
        unit = java::parse_file(obfuscate_unit(unit, *obfuscation).text, key);
      }
      per_file[i] = make_samples(unit, limits, seed);
    } catch (const java::ParseError& e) {
      spdlog::warn("{}: {} (skipped)", key, e.what());
      failed[i] = 1;
    } catch (const ObfuscationError& e) {
      spdlog::warn("{}: {} (skipped)", key, e.what());
      failed[i] = 1;
    }
  });
  CorpusSamples out;
  out.files = static_cast<int>(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    out.parse_failures += failed[i];
    for (MethodSample& s : per_file[i]) out.samples.push_back(std::move(s));
  }
  return out;
}

PredictionMetrics evaluate_predictions(const Checkpoint& model,
                                       const std::vector<MethodSample>& samples) {
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(samples.size());
  for (const MethodSample& s : samples) {
    const auto top = predict_name(model.params, to_ids(s, model.vocab), 1,
                                  model.vocab.targets);
    pairs.emplace_back(s.target_name, top.front().first);
  }
  return name_prediction_f1(pairs);
}

CrossObfuscationReport cross_obfuscation(const Checkpoint& model,
                                         const fs::path& corpus,
                                         const ObfuscationScheme& scheme,
                                         std::uint64_t seed, int jobs) {
  const CorpusSamples plain = extract_corpus(corpus, model.limits, std::nullopt, seed, jobs);
  if (plain.samples.empty()) {
    throw std::invalid_argument("no extractable methods under " + corpus.string());
  }
  const CorpusSamples renamed = extract_corpus(corpus, model.limits, scheme, seed, jobs);
  CrossObfuscationReport r;
  r.methods = static_cast<int>(plain.samples.size());
  r.plain = evaluate_predictions(model, plain.samples);
  r.obfuscated = evaluate_predictions(model, renamed.samples);
  return r;
}

TrainedCheckpoint train_checkpoint(const std::vector<MethodSample>& samples,
                                   const ModelConfig& config,
                                   const ExtractionLimits& limits,
                                   const std::string& obfuscation, int min_count) {
  TrainedCheckpoint out;
  Checkpoint& ckpt = out.checkpoint;
  ckpt.config = config;
  ckpt.limits = limits;
  ckpt.obfuscation = obfuscation;
  ckpt.vocab = build_vocabulary(samples, min_count);
  std::vector<IdSample> ids;
  ids.reserve(samples.size());
  for (const MethodSample& s : samples) ids.push_back(to_ids(s, ckpt.vocab));
  out.result = train(config, ids, ckpt.vocab);
  ckpt.params = out.result.params;
  return out;
}

std::optional<ObfuscationScheme> checkpoint_obfuscation(const Checkpoint& model,
                                                        int length,
                                                        std::uint64_t seed) {
  if (model.obfuscation == "none") return std::nullopt;
  ObfuscationScheme scheme{parse_mode(model.obfuscation), length, seed};
  scheme.validate();
  return scheme;
}

std::string vocabulary_stats(const VocabularyCounts& counts) {
  std::string out;
  auto emit = [&](const char* kind, const std::map<std::string, std::int64_t>& m) {
    for (const auto& [s, n] : m) {
      out += kind;
      out += '\t';
      out += s;
      out += '\t';
      out += std::to_string(n);
      out += '\n';
    }
  };
  emit("token", counts.tokens);
  emit("path", counts.paths);
  emit("target", counts.targets);
  return out;
}

std::string method_embeddings_csv(const std::vector<MethodSample>& samples,
                                  const Checkpoint& model) {
  std::string out = "sourcePath,methodName";
  for (int j = 0; j < model.params.d_code(); ++j) out += ",v" + std::to_string(j);
  out += '\n';
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  for (const MethodSample& s : samples) {
    out += quoted(s.source_path) + ',' + quoted(s.target_name);
    const Vector v = embed_method(model.params, to_ids(s, model.vocab));
    for (Eigen::Index j = 0; j < v.size(); ++j) out += ',' + format_double(v[j]);
    out += '\n';
  }
  return out;
}

void write_manifest(const fs::path& path, const nlohmann::ordered_json& manifest) {
  write_text_file(path, manifest.dump(2) + "\n");
}

fs::path manifest_path(const fs::path& artifact) {
  fs::path p = artifact;
  if (!p.has_filename()) p = p.parent_path();
  return p.string() + ".manifest.json";
}

}  // namespace codevec
