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


#include "codevec/aggregate/aggregate.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "codevec/common/files.h"
#include "codevec/common/parallel.h"
#include "codevec/java/parser.h"

namespace codevec {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kFnNames[] = {"min",  "max",    "sum",
                                         "mean", "median", "stddev"};

std::string capitalized(std::string_view s) {
  std::string out(s);
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

double column_stat(AggFn fn, std::vector<double>& column) {
  const auto n = static_cast<double>(column.size());
  switch (fn) {
    case AggFn::kMin:
      return *std::min_element(column.begin(), column.end());
    case AggFn::kMax:
      return *std::max_element(column.begin(), column.end());
    case AggFn::kSum:
      return std::accumulate(column.begin(), column.end(), 0.0);
    case AggFn::kMean:
      return std::accumulate(column.begin(), column.end(), 0.0) / n;
    case AggFn::kMedian: {
      std::sort(column.begin(), column.end());
      const std::size_t mid = column.size() / 2;
      return column.size() % 2 ? column[mid]
                               : (column[mid - 1] + column[mid]) / 2.0;
    }
    case AggFn::kStddev: {
      const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
      double ss = 0;
      for (double x : column) ss += (x - mean) * (x - mean);
      return std::sqrt(ss / n);
    }
  }
  return 0;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// RFC 4180 records.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      field.clear();
      row.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw IoError("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct FileResult {
  enum class Status { kOk, kParseFailure, kNoMethods } status = Status::kOk;
  std::vector<Vector> values;  // one per aggregation
};

FileResult embed_for_all(const java::SourceUnit& unit, const Checkpoint& model,
                         const EmbedOptions& options,
                         const std::vector<AggregationSpec>& aggregations) {
  FileResult r;
  const auto methods =
      embed_methods(unit, model, options.obfuscation, options.seed);
  if (methods.empty()) {
    r.status = FileResult::Status::kNoMethods;
    return r;
  }
  std::vector<MethodVector> mv;
  for (const auto& m : methods) mv.push_back({m.vector, m.line_count});
  SelectionSpec sel = options.selection;
  sel.seed = derive_seed(options.selection.seed, unit.path);
  const std::vector<Vector> chosen = select_methods(mv, sel);
  for (const auto& agg : aggregations) r.values.push_back(aggregate_vectors(chosen, agg));
  return r;
}

FileResult embed_path(const fs::path& file, const std::string& key,
                      const Checkpoint& model, const EmbedOptions& options,
                      const std::vector<AggregationSpec>& aggregations) {
  java::SourceUnit unit;
  try {
    unit = java::parse_file(read_text_file(file), key);
  } catch (const java::ParseError& e) {
    spdlog::warn("{}: {} (skipped)", key, e.what());
    FileResult r;
    r.status = FileResult::Status::kParseFailure;
    return r;
  }
  FileResult r = embed_for_all(unit, model, options, aggregations);
  if (r.status == FileResult::Status::kNoMethods) {
    spdlog::warn("{}: no embeddable methods (skipped)", key);
  }
  return r;
}

// Sorts by source path, caps each label, and fans out per aggregation.
DatasetBuild assemble(std::vector<std::pair<ClassEmbedding, std::vector<Vector>>> rows,
                      const std::vector<std::string>& labels,
                      const std::vector<AggregationSpec>& aggregations,
                      std::size_t d_code, int per_class_cap, std::uint64_t seed,
                      DatasetStats stats) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.first.source_path < b.first.source_path;
  });
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    by_label[rows[i].first.label].push_back(i);
  }
  std::vector<bool> keep(rows.size(), true);
  for (const std::string& label : labels) {
    auto it = by_label.find(label);
    if (it == by_label.end()) {
      throw EmptyClass("label '" + label + "' has no embeddable files");
    }
    const auto& idx = it->second;
    const auto cap = static_cast<std::size_t>(per_class_cap);
    if (idx.size() <= cap) continue;
    Rng rng(derive_seed(seed, "cap:" + label));
    std::vector<bool> chosen(idx.size(), false);
    for (std::size_t j : rng.sample_indices(idx.size(), cap)) chosen[j] = true;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (!chosen[j]) {
        keep[idx[j]] = false;
        ++stats.downsampled;
      }
    }
  }
  DatasetBuild build;
  build.stats = stats;
  for (std::size_t a = 0; a < aggregations.size(); ++a) {
    LabeledDataset ds;
    ds.labels = labels;
    ds.feature_width = aggregations[a].width(d_code);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!keep[i]) continue;
      ClassEmbedding row = rows[i].first;
      row.values = rows[i].second[a];
      ds.rows.push_back(std::move(row));
    }
    build.datasets.push_back(std::move(ds));
  }
  return build;
}

}  // namespace

void SelectionSpec::validate() const {
  if (mode != SelectionMode::kAll && k < 1) {
    throw std::invalid_argument("selection K must be >= 1");
  }
}

std::string SelectionSpec::name() const {
  switch (mode) {
    case SelectionMode::kAll: return "all";
    case SelectionMode::kTopK: return "top" + std::to_string(k);
    case SelectionMode::kRandomK: return "random" + std::to_string(k);
  }
  return "all";
}

SelectionSpec SelectionSpec::parse(std::string_view text, std::uint64_t seed) {
  SelectionSpec s;
  s.seed = seed;
  auto number = [&](std::string_view digits) {
    int k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw std::invalid_argument("bad selection: " + std::string(text));
    }
    return k;
  };
  if (text == "all") return s;
  if (text.rfind("top", 0) == 0) {
    s.mode = SelectionMode::kTopK;
    s.k = number(text.substr(3));
  } else if (text.rfind("random", 0) == 0) {
    s.mode = SelectionMode::kRandomK;
    s.k = number(text.substr(6));
  } else {
    throw std::invalid_argument("bad selection: " + std::string(text));
  }
  s.validate();
  return s;
}

AggregationSpec::AggregationSpec(std::vector<AggFn> functions)
    : functions_(std::move(functions)) {
  if (functions_.empty()) {
    throw std::invalid_argument("aggregation needs at least one function");
  }
  std::sort(functions_.begin(), functions_.end());
  if (std::adjacent_find(functions_.begin(), functions_.end()) != functions_.end()) {
    throw std::invalid_argument("aggregation functions must be distinct");
  }
}

AggregationSpec AggregationSpec::parse(std::string_view name) {
  std::vector<AggFn> fns;
  std::size_t i = 0;
  while (i < name.size()) {
    bool matched = false;
    // Longest match first so "median" is not read as "me"+...
    for (std::string_view word : {"median", "stddev", "mean", "std", "min",
                                  "max", "sum"}) {
      if (name.size() - i < word.size()) continue;
      bool eq = true;
      for (std::size_t j = 0; j < word.size(); ++j) {
        if (std::tolower(static_cast<unsigned char>(name[i + j])) != word[j]) {
          eq = false;
          break;
        }
      }
      if (!eq) continue;
      const std::string_view canonical = word == "std" ? "stddev" : word;
      const auto pos = std::find(std::begin(kFnNames), std::end(kFnNames), canonical);
      fns.push_back(static_cast<AggFn>(pos - std::begin(kFnNames)));
      i += word.size();
      matched = true;
      break;
    }
    if (!matched) {
      throw std::invalid_argument("unknown aggregation: " + std::string(name));
    }
  }
  return AggregationSpec(std::move(fns));
}

std::string AggregationSpec::name() const {
  std::string out;
  for (AggFn f : functions_) {
    const std::string_view word = kFnNames[static_cast<int>(f)];
    out += out.empty() ? std::string(word) : capitalized(word);
  }
  return out;
}

std::vector<AggregationSpec> standard_agg_suite() {
  std::vector<AggregationSpec> suite;
  for (int i = 0; i < 6; ++i) suite.emplace_back(std::vector{static_cast<AggFn>(i)});
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      suite.emplace_back(std::vector{static_cast<AggFn>(i), static_cast<AggFn>(j)});
    }
  }
  suite.emplace_back(std::vector{AggFn::kMin, AggFn::kMean, AggFn::kMax});
  suite.emplace_back(std::vector{AggFn::kMin, AggFn::kMax, AggFn::kSum,
                                 AggFn::kMean, AggFn::kMedian, AggFn::kStddev});
  return suite;
}

std::vector<Vector> select_methods(const std::vector<MethodVector>& methods,
                                   const SelectionSpec& spec) {
  spec.validate();
  std::vector<Vector> out;
  const auto k = static_cast<std::size_t>(spec.k);
  if (spec.mode == SelectionMode::kAll || k >= methods.size()) {
    for (const auto& m : methods) out.push_back(m.vector);
    return out;
  }
  std::vector<std::size_t> chosen;
  if (spec.mode == SelectionMode::kTopK) {
    std::vector<std::size_t> order(methods.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return methods[a].line_count > methods[b].line_count;
    });
    chosen.assign(order.begin(), order.begin() + static_cast<long>(k));
    std::sort(chosen.begin(), chosen.end());
  } else {
    Rng rng(spec.seed);
    chosen = rng.sample_indices(methods.size(), k);
  }
  for (std::size_t i : chosen) out.push_back(methods[i].vector);
  return out;
}

Vector aggregate_vectors(const std::vector<Vector>& vectors,
                         const AggregationSpec& spec) {
  if (vectors.empty()) throw std::invalid_argument("nothing to aggregate");
  const Eigen::Index d = vectors[0].size();
  for (const Vector& v : vectors) {
    if (v.size() != d) throw std::invalid_argument("vector lengths differ");
  }
  const auto& fns = spec.functions();
  Vector out(static_cast<Eigen::Index>(fns.size()) * d);
  std::vector<double> column(vectors.size());
  for (Eigen::Index j = 0; j < d; ++j) {
    for (std::size_t f = 0; f < fns.size(); ++f) {
      for (std::size_t i = 0; i < vectors.size(); ++i) column[i] = vectors[i][j];
      out[static_cast<Eigen::Index>(f) * d + j] = column_stat(fns[f], column);
    }
  }
  return out;
}

std::vector<MethodEmbedding> embed_methods(
    const java::SourceUnit& unit, const Checkpoint& model,
    const std::optional<ObfuscationScheme>& obfuscation, std::uint64_t seed) {
  std::vector<MethodSample> samples;
  if (obfuscation) {
    const java::SourceUnit renamed =
        java::parse_file(obfuscate_unit(unit, *obfuscation).text, unit.path);
    samples = make_samples(renamed, model.limits, seed);
  } else {
    samples = make_samples(unit, model.limits, seed);
  }
  std::vector<MethodEmbedding> out;
  for (const MethodSample& s : samples) {
    out.push_back({s.target_name, s.line_count,
                   embed_method(model.params, to_ids(s, model.vocab))});
  }
  return out;
}

ClassEmbedding embed_file(const java::SourceUnit& unit, const Checkpoint& model,
                          const EmbedOptions& options,
                          const AggregationSpec& aggregation,
                          const std::string& label) {
  FileResult r = embed_for_all(unit, model, options, {aggregation});
  if (r.status != FileResult::Status::kOk) {
    throw NoMethods(unit.path + " has no embeddable methods");
  }
  return {std::move(r.values[0]), label, unit.path};
}

ClassEmbedding embed_pair_difference(const java::SourceUnit& a,
                                     const java::SourceUnit& b,
                                     const Checkpoint& model,
                                     const EmbedOptions& options,
                                     const AggregationSpec& aggregation,
                                     const std::string& label) {
  ClassEmbedding ea = embed_file(a, model, options, aggregation, label);
  const ClassEmbedding eb = embed_file(b, model, options, aggregation, label);
  ea.values -= eb.values;
  ea.source_path = a.path + "|" + b.path;
  return ea;
}

std::vector<PairRecord> read_pair_manifest(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<PairRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected label<TAB>pathA<TAB>pathB");
    }
    out.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                   line.substr(t2 + 1)});
  }
  return out;
}

DatasetBuild build_datasets(const fs::path& corpus, const Checkpoint& model,
                            const EmbedOptions& options,
                            const std::vector<AggregationSpec>& aggregations,
                            int per_class_cap, int jobs) {
  if (per_class_cap < 1) throw std::invalid_argument("per-class cap must be >= 1");
  if (!fs::is_directory(corpus)) throw IoError("corpus not found: " + corpus.string());
  std::vector<std::string> labels;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_directory()) labels.push_back(entry.path().filename().string());
  }
  std::sort(labels.begin(), labels.end());
  if (labels.empty()) throw EmptyClass("corpus has no label directories");

  struct Item {
    fs::path file;
    std::string key;
    std::string label;
  };
  std::vector<Item> items;
  for (const std::string& label : labels) {
    for (const fs::path& f : list_files(corpus / label, ".java")) {
      items.push_back({f, relative_key(f, corpus), label});
    }
  }
  std::vector<FileResult> results(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    results[i] = embed_path(items[i].file, items[i].key, model, options, aggregations);
  });

  DatasetStats stats;
  stats.files = static_cast<int>(items.size());
  std::vector<std::pair<ClassEmbedding, std::vector<Vector>>> rows;
  for (std::size_t i = 0; i < items.size(); ++i) {
    switch (results[i].status) {
      case FileResult::Status::kParseFailure: ++stats.parse_failures; break;
      case FileResult::Status::kNoMethods: ++stats.without_methods; break;
      case FileResult::Status::kOk:
        rows.push_back({{Vector(), items[i].label, items[i].key},
                        std::move(results[i].values)});
        break;
    }
  }
  return assemble(std::move(rows), labels, aggregations,
                  static_cast<std::size_t>(model.params.d_code()), per_class_cap,
                  options.seed, stats);
}

DatasetBuild build_pair_datasets(const std::vector<PairRecord>& pairs,
                                 const fs::path& base, const Checkpoint& model,
                                 const EmbedOptions& options,
                                 const std::vector<AggregationSpec>& aggregations,
                                 int per_class_cap, int jobs) {
  if (per_class_cap < 1) throw std::invalid_argument("per-class cap must be >= 1");
  std::set<std::string> label_set;
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> key_index;
  for (const PairRecord& p : pairs) {
    label_set.insert(p.label);
    for (const std::string* k : {&p.path_a, &p.path_b}) {
      if (key_index.emplace(*k, keys.size()).second) keys.push_back(*k);
    }
  }
  std::vector<FileResult> results(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    const fs::path file = fs::path(keys[i]).is_absolute() ? fs::path(keys[i])
                                                          : base / keys[i];
    try {
      results[i] = embed_path(file, keys[i], model, options, aggregations);
    } catch (const IoError& e) {
      spdlog::warn("{}: {} (skipped)", keys[i], e.what());
      results[i].status = FileResult::Status::kParseFailure;
    }
  });

  DatasetStats stats;
  stats.files = static_cast<int>(keys.size());
  for (const FileResult& r : results) {
    if (r.status == FileResult::Status::kParseFailure) ++stats.parse_failures;
    if (r.status == FileResult::Status::kNoMethods) ++stats.without_methods;
  }
  std::vector<std::pair<ClassEmbedding, std::vector<Vector>>> rows;
  for (const PairRecord& p : pairs) {
    const FileResult& a = results[key_index[p.path_a]];
    const FileResult& b = results[key_index[p.path_b]];
    if (a.status != FileResult::Status::kOk || b.status != FileResult::Status::kOk) {
      continue;
    }
    std::vector<Vector> diff;
    for (std::size_t k = 0; k < aggregations.size(); ++k) {
      diff.push_back(a.values[k] - b.values[k]);
    }
    rows.push_back({{Vector(), p.label, p.path_a + "|" + p.path_b}, std::move(diff)});
  }
  return assemble(std::move(rows),
                  std::vector<std::string>(label_set.begin(), label_set.end()),
                  aggregations, static_cast<std::size_t>(model.params.d_code()),
                  per_class_cap, options.seed, stats);
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string dataset_csv(const LabeledDataset& dataset) {
  std::string out;
  for (std::size_t j = 0; j < dataset.feature_width; ++j) {
    out += 'f';
    out += std::to_string(j);
    out += ',';
  }
  out += "label\n";
  for (const ClassEmbedding& row : dataset.rows) {
    for (Eigen::Index j = 0; j < row.values.size(); ++j) {
      out += format_double(row.values[j]);
      out += ',';
    }
    out += csv_field(row.label);
    out += '\n';
  }
  return out;
}

void write_dataset_csv(const fs::path& path, const LabeledDataset& dataset) {
  write_text_file(path, dataset_csv(dataset));
}

LabeledDataset read_dataset_csv(const fs::path& path) {
  const auto records = parse_csv(read_text_file(path));
  if (records.empty() || records[0].empty() || records[0].back() != "label") {
    throw IoError(path.string() + ": missing CSV header ending in 'label'");
  }
  LabeledDataset ds;
  ds.feature_width = records[0].size() - 1;
  std::set<std::string> labels;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != ds.feature_width + 1) {
      throw IoError(path.string() + ": row " + std::to_string(r) +
                    " has the wrong number of fields");
    }
    ClassEmbedding row;
    row.values.resize(static_cast<Eigen::Index>(ds.feature_width));
    for (std::size_t j = 0; j < ds.feature_width; ++j) {
      const std::string& f = rec[j];
      double x = 0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw IoError(path.string() + ": bad number '" + f + "' in row " +
                      std::to_string(r));
      }
      row.values[static_cast<Eigen::Index>(j)] = x;
    }
    row.label = rec.back();
    labels.insert(row.label);
    ds.rows.push_back(std::move(row));
  }
  ds.labels.assign(labels.begin(), labels.end());
  return ds;
}

}  // namespace codevec
