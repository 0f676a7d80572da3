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


#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "codevec/aggregate/aggregate.h"
#include "codevec/cli/pipeline.h"
#include "codevec/common/files.h"
#include "codevec/java/parser.h"

namespace codevec {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string log_level = "warn";
};

struct ObfuscateOptions {
  std::string in, out, mode;
  int length = 8;
};

struct ExtractOptions {
  std::string in, out;
  std::string max_length = "8", max_width = "2";
  int max_contexts = 200;
  std::string obfuscate = "none";
  int length = 8;
};

struct TrainOptions {
  std::string dump, out;
  ModelConfig model;
  int min_count = 1;
  std::string obfuscation;
};

struct EmbedOptionsCli {
  std::string model, in, pairs, base, out;
  std::string selection = "all";
  std::string aggregation = "mean";
  int cap = 2000;
  bool methods = false;
  int length = 8;
};

struct EvaluateOptions {
  std::string data, out, dataset, system = "default", compare;
  ClassifierConfig classifier;
  bool no_bias = false;
  CvPlan plan;
};

struct CompareOptions {
  std::string a, b, out;
};

struct RankOptions {
  std::vector<std::string> inputs;
  std::string out;
};

struct XobfOptions {
  std::string model, in, out;
  int length = 8;
};

void configure_logging(const std::string& level) {
  auto logger = spdlog::get("codevec");
  if (!logger) logger = spdlog::stderr_color_mt("codevec");
  spdlog::set_default_logger(logger);
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") {
    throw std::invalid_argument("unknown log level: " + level);
  }
  spdlog::set_level(parsed);
}

int parse_limit(const std::string& text, const char* name) {
  if (text == "inf" || text == "unlimited") return kUnlimited;
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(std::string(name) + " must be an integer or 'inf'");
}

std::string limit_name(int v) { return v == kUnlimited ? "inf" : std::to_string(v); }

ordered_json limits_json(const ExtractionLimits& l) {
  return {{"max_length", limit_name(l.max_length)},
          {"max_width", limit_name(l.max_width)},
          {"max_contexts", l.max_contexts}};
}

ordered_json base_manifest(const std::string& command, const GlobalOptions& g) {
  return {{"tool", "codevec"}, {"version", kToolVersion}, {"command", command},
          {"seed", g.seed}};
}

ordered_json model_config_json(const ModelConfig& c) {
  return {{"d_emb", c.d_emb},
          {"max_contexts", c.max_contexts},
          {"learning_rate", c.learning_rate},
          {"beta1", c.beta1},
          {"beta2", c.beta2},
          {"epsilon", c.epsilon},
          {"batch_size", c.batch_size},
          {"epochs", c.epochs},
          {"patience", c.patience},
          {"validation_fraction", c.validation_fraction},
          {"dropout", c.dropout},
          {"dropout_rate", c.dropout_rate},
          {"init_scale", c.init_scale},
          {"seed", c.seed}};
}

std::string fixed(double x, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

int cmd_obfuscate(const ObfuscateOptions& o, const GlobalOptions& g, std::ostream& out) {
  ObfuscationScheme scheme{parse_mode(o.mode), o.length, g.seed};
  scheme.validate();
  const ObfuscationReport report = obfuscate_tree(o.in, o.out, scheme, g.jobs);
  out << report.to_json() << "\n";
  ordered_json m = base_manifest("obfuscate", g);
  m["config"] = {{"in", o.in}, {"out", o.out}, {"mode", o.mode}, {"length", o.length}};
  m["counts"] = {{"processed", report.processed}, {"skipped", report.skipped},
                 {"errors", report.errors.size()}};
  write_manifest(manifest_path(o.out), m);
  return report.errors.empty() ? 0 : 1;
}

int cmd_extract(const ExtractOptions& o, const GlobalOptions& g, std::ostream& out) {
  ExtractionLimits limits{parse_limit(o.max_length, "--max-length"),
                          parse_limit(o.max_width, "--max-width"), o.max_contexts};
  limits.validate();
  std::optional<ObfuscationScheme> scheme;
  if (o.obfuscate != "none") {
    scheme = ObfuscationScheme{parse_mode(o.obfuscate), o.length, g.seed};
    scheme->validate();
  }
  if (!fs::is_directory(o.in)) throw IoError("input directory not found: " + o.in);
  const CorpusSamples corpus = extract_corpus(o.in, limits, scheme, g.seed, g.jobs);
  write_dump(o.out, corpus.samples);
  write_text_file(o.out + ".vocab.tsv", vocabulary_stats(count_vocabulary(corpus.samples)));
  std::size_t contexts = 0;
  for (const auto& s : corpus.samples) contexts += s.contexts.size();
  out << "files " << corpus.files << ", skipped " << corpus.parse_failures
      << ", methods " << corpus.samples.size() << ", contexts " << contexts << "\n";
  ordered_json m = base_manifest("extract", g);
  m["config"] = {{"in", o.in}, {"out", o.out}, {"limits", limits_json(limits)},
                 {"obfuscation", o.obfuscate}, {"length", o.length}};
  m["counts"] = {{"files", corpus.files}, {"parse_failures", corpus.parse_failures},
                 {"methods", corpus.samples.size()}, {"contexts", contexts}};
  write_manifest(manifest_path(o.out), m);
  return 0;
}

int cmd_train(TrainOptions o, const GlobalOptions& g, std::ostream& out) {
  const std::vector<MethodSample> samples = read_dump(o.dump);
  if (samples.empty()) throw std::invalid_argument("dump has no methods: " + o.dump);
  ExtractionLimits limits;
  std::string obfuscation = "none";
  if (fs::exists(manifest_path(o.dump))) {
    const auto dm = nlohmann::json::parse(read_text_file(manifest_path(o.dump)));
    const auto& l = dm.at("config").at("limits");
    limits = {parse_limit(l.at("max_length").get<std::string>(), "max_length"),
              parse_limit(l.at("max_width").get<std::string>(), "max_width"),
              l.at("max_contexts").get<int>()};
    obfuscation = dm.at("config").value("obfuscation", "none");
  }
  if (!o.obfuscation.empty()) obfuscation = o.obfuscation;
  if (obfuscation != "none") parse_mode(obfuscation);
  o.model.seed = g.seed;
  o.model.max_contexts = limits.max_contexts;
  const TrainedCheckpoint t =
      train_checkpoint(samples, o.model, limits, obfuscation, o.min_count);
  save_checkpoint(o.out, t.checkpoint);

  out << "epoch  train_loss  val_loss  val_acc  val_f1\n";
  ordered_json history = ordered_json::array();
  for (const EpochMetrics& e : t.result.history) {
    out << std::setw(5) << e.epoch << "  " << std::setw(10) << fixed(e.train_loss)
        << "  " << std::setw(8) << fixed(e.validation_loss) << "  " << std::setw(7)
        << fixed(e.validation_accuracy) << "  " << std::setw(6)
        << fixed(e.validation_f1) << "\n";
    history.push_back({{"epoch", e.epoch}, {"train_loss", e.train_loss},
                       {"validation_loss", e.validation_loss},
                       {"validation_accuracy", e.validation_accuracy},
                       {"validation_f1", e.validation_f1}});
  }
  out << "best epoch " << t.result.best_epoch << "\n";
  ordered_json m = base_manifest("train", g);
  m["config"] = {{"dump", o.dump}, {"out", o.out}, {"model", model_config_json(o.model)},
                 {"limits", limits_json(limits)}, {"obfuscation", obfuscation},
                 {"min_count", o.min_count}};
  m["counts"] = {{"methods", samples.size()},
                 {"train", t.result.train_indices.size()},
                 {"validation", t.result.validation_indices.size()},
                 {"tokens", t.checkpoint.vocab.tokens.size()},
                 {"paths", t.checkpoint.vocab.paths.size()},
                 {"targets", t.checkpoint.vocab.targets.size()}};
  m["history"] = history;
  m["best_epoch"] = t.result.best_epoch;
  m["checkpoint_hash"] = checkpoint_hash(o.out);
  write_manifest(manifest_path(o.out), m);
  return 0;
}

int cmd_embed(const EmbedOptionsCli& o, const GlobalOptions& g, std::ostream& out) {
  const Checkpoint model = load_checkpoint(o.model);
  EmbedOptions options;
  options.selection = SelectionSpec::parse(o.selection, g.seed);
  options.obfuscation = checkpoint_obfuscation(model, o.length, g.seed);
  options.seed = g.seed;

  ordered_json m = base_manifest("embed", g);
  m["config"] = {{"model", o.model}, {"in", o.in}, {"pairs", o.pairs},
                 {"out", o.out}, {"selection", options.selection.name()},
                 {"aggregation", o.aggregation}, {"cap", o.cap},
                 {"obfuscation", model.obfuscation}, {"length", o.length}};
  m["checkpoint_hash"] = checkpoint_hash(o.model);

  if (o.methods) {
    if (o.in.empty()) throw std::invalid_argument("--methods needs --in");
    if (!fs::is_directory(o.in)) throw IoError("input directory not found: " + o.in);
    const CorpusSamples corpus =
        extract_corpus(o.in, model.limits, options.obfuscation, g.seed, g.jobs);
    write_text_file(o.out, method_embeddings_csv(corpus.samples, model));
    out << "methods " << corpus.samples.size() << ", skipped files "
        << corpus.parse_failures << "\n";
    m["counts"] = {{"files", corpus.files}, {"parse_failures", corpus.parse_failures},
                   {"methods", corpus.samples.size()}};
    write_manifest(manifest_path(o.out), m);
    return 0;
  }

  const bool suite = o.aggregation == "suite";
  const std::vector<AggregationSpec> aggregations =
      suite ? standard_agg_suite()
            : std::vector<AggregationSpec>{AggregationSpec::parse(o.aggregation)};
  DatasetBuild build;
  if (!o.pairs.empty()) {
    const fs::path base = o.base.empty() ? fs::path(o.pairs).parent_path() : fs::path(o.base);
    build = build_pair_datasets(read_pair_manifest(o.pairs), base, model, options,
                                aggregations, o.cap, g.jobs);
  } else {
    if (o.in.empty()) throw std::invalid_argument("embed needs --in or --pairs");
    build = build_datasets(o.in, model, options, aggregations, o.cap, g.jobs);
  }
  ordered_json outputs = ordered_json::array();
  for (std::size_t a = 0; a < aggregations.size(); ++a) {
    const fs::path path = suite ? fs::path(o.out) / (aggregations[a].name() + ".csv")
                                : fs::path(o.out);
    write_dataset_csv(path, build.datasets[a]);
    outputs.push_back(path.string());
  }
  const LabeledDataset& first = build.datasets.front();
  out << "rows " << first.rows.size() << ", labels " << first.labels.size()
      << ", width " << first.feature_width << ", files " << build.stats.files
      << ", parse failures " << build.stats.parse_failures << ", without methods "
      << build.stats.without_methods << ", downsampled " << build.stats.downsampled
      << "\n";
  m["counts"] = {{"files", build.stats.files},
                 {"parse_failures", build.stats.parse_failures},
                 {"without_methods", build.stats.without_methods},
                 {"downsampled", build.stats.downsampled},
                 {"rows", first.rows.size()}};
  m["labels"] = first.labels;
  // Row provenance, shared by every output since rows line up across them.
  ordered_json sources = ordered_json::array();
  for (const ClassEmbedding& row : first.rows) sources.push_back(row.source_path);
  m["rows"] = sources;
  m["outputs"] = outputs;
  write_manifest(manifest_path(o.out), m);
  return 0;
}

void print_kappa_table(const std::vector<EvalReport>& reports, std::ostream& out) {
  std::size_t w = 11;
  for (const auto& r : reports) w = std::max(w, r.aggregation.size());
  out << std::left << std::setw(static_cast<int>(w)) << "aggregation"
      << "  mean_kappa  sd_kappa  accuracy\n";
  for (const auto& r : reports) {
    const auto ks = r.flat_kappa();
    double ss = 0;
    for (double k : ks) ss += (k - r.mean_kappa) * (k - r.mean_kappa);
    const double sd = ks.size() > 1 ? std::sqrt(ss / static_cast<double>(ks.size() - 1)) : 0;
    out << std::left << std::setw(static_cast<int>(w)) << r.aggregation << "  "
        << std::right << std::setw(10) << fixed(r.mean_kappa) << "  " << std::setw(8)
        << fixed(sd) << "  " << std::setw(8) << fixed(r.mean_accuracy) << "\n";
  }
}

std::string ttest_line(const TTestResult& t) {
  return "mean_diff " + fixed(t.mean_diff) + ", t " + format_double(t.t) + ", p " +
         format_double(t.p_value) + (t.significant ? ", significant" : ", not significant");
}

int cmd_evaluate(EvaluateOptions o, const GlobalOptions& g, std::ostream& out) {
  o.classifier.bias = !o.no_bias;
  o.plan.seed = g.seed;
  std::vector<fs::path> inputs;
  const bool many = fs::is_directory(o.data);
  if (many) {
    inputs = list_files(o.data, ".csv");
    if (inputs.empty()) throw IoError("no CSV files in " + o.data);
  } else {
    inputs.push_back(o.data);
  }
  std::vector<EvalReport> reports;
  for (const fs::path& csv : inputs) {
    const LabeledDataset ds = read_dataset_csv(csv);
    EvalReport r = cross_validate(ds, o.classifier, o.plan, g.jobs);
    r.dataset = !o.dataset.empty()
                    ? o.dataset
                    : fs::absolute(csv).parent_path().filename().string();
    r.aggregation = csv.stem().string();
    r.system = o.system;
    const fs::path dest = many ? fs::path(o.out) / (csv.stem().string() + ".results")
                               : fs::path(o.out);
    write_report(dest, r);
    reports.push_back(std::move(r));
  }
  print_kappa_table(reports, out);
  ordered_json m = base_manifest("evaluate", g);
  m["config"] = {{"data", o.data}, {"out", o.out}, {"dataset", o.dataset},
                 {"system", o.system}, {"c", o.classifier.c},
                 {"bias", o.classifier.bias}, {"tolerance", o.classifier.tolerance},
                 {"max_iterations", o.classifier.max_iterations},
                 {"runs", o.plan.runs}, {"folds", o.plan.folds}};
  m["fingerprint"] = reports.front().fingerprint;
  if (!o.compare.empty()) {
    if (many) throw std::invalid_argument("--compare needs a single CSV");
    const TTestResult t = compare_reports(reports.front(), read_report(o.compare));
    out << ttest_line(t) << "\n";
    m["ttest"] = {{"against", o.compare}, {"p_value", t.p_value},
                  {"mean_diff", t.mean_diff}, {"significant", t.significant}};
  }
  write_manifest(manifest_path(o.out), m);
  return 0;
}

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  const TTestResult t = compare_reports(read_report(o.a), read_report(o.b));
  const std::string record = format_ttest(t);
  out << record;
  if (!o.out.empty()) write_text_file(o.out, record);
  return 0;
}

int cmd_rank(const RankOptions& o, std::ostream& out) {
  std::vector<fs::path> files;
  for (const std::string& in : o.inputs) {
    if (fs::is_directory(in)) {
      for (const fs::path& f : list_files(in, ".results")) files.push_back(f);
    } else if (fs::exists(in)) {
      files.push_back(in);
    } else {
      throw IoError("not found: " + in);
    }
  }
  if (files.empty()) throw IoError("no results records found");
  // dataset -> aggregation -> (sum, count) over systems.
  std::map<std::string, std::map<std::string, std::pair<double, int>>> sums;
  for (const fs::path& f : files) {
    const EvalReport r = read_report(f);
    auto& cell = sums[r.dataset][r.aggregation];
    cell.first += r.mean_kappa;
    ++cell.second;
  }
  std::map<std::string, std::map<std::string, double>> means;
  for (const auto& [dataset, aggs] : sums) {
    for (const auto& [agg, cell] : aggs) means[dataset][agg] = cell.first / cell.second;
  }
  const auto totals = rank_aggregations(means);
  std::vector<std::pair<std::string, int>> order(totals.begin(), totals.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return canonical_name_less(a.first, b.first);
  });
  std::ostringstream table;
  table << "aggregation\tscore\n";
  for (const auto& [name, score] : order) table << name << "\t" << score << "\n";
  out << table.str();
  if (!o.out.empty()) write_text_file(o.out, table.str());
  return 0;
}

int cmd_xobf(const XobfOptions& o, const GlobalOptions& g, std::ostream& out) {
  const Checkpoint model = load_checkpoint(o.model);
  if (!fs::is_directory(o.in)) throw IoError("input directory not found: " + o.in);
  ObfuscationScheme scheme{ObfuscationMode::kRandom, o.length, g.seed};
  scheme.validate();
  const CrossObfuscationReport r = cross_obfuscation(model, o.in, scheme, g.seed, g.jobs);
  out << "methods " << r.methods << "\n";
  out << "f1 plain      " << fixed(r.plain.f1) << "\n";
  out << "f1 obfuscated " << fixed(r.obfuscated.f1) << "\n";
  out << "f1 drop       " << fixed(r.drop()) << "\n";
  if (!o.out.empty()) {
    ordered_json m = base_manifest("xobf", g);
    m["config"] = {{"model", o.model}, {"in", o.in}, {"length", o.length}};
    m["checkpoint_hash"] = checkpoint_hash(o.model);
    auto metrics = [](const PredictionMetrics& p) {
      return ordered_json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
    };
    m["methods"] = r.methods;
    m["plain"] = metrics(r.plain);
    m["obfuscated"] = metrics(r.obfuscated);
    m["drop"] = r.drop();
    write_manifest(o.out, m);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Java code embeddings: obfuscation, path contexts, training, "
               "aggregation and evaluation"};
  app.name("codevec");
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "Key/value config file; flags override it");
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Global seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "File-level worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off")
      ->capture_default_str();

  ObfuscateOptions ob;
  auto* obf = app.add_subcommand("obfuscate", "Rename variables across a source tree");
  obf->add_option("--in", ob.in, "Input directory")->required();
  obf->add_option("--out", ob.out, "Output directory")->required();
  obf->add_option("--mode", ob.mode, "type or random")->required();
  obf->add_option("--len", ob.length, "Random name length")->capture_default_str();

  ExtractOptions ex;
  auto* ext = app.add_subcommand("extract", "Write a path-context dump for a corpus");
  ext->add_option("--in", ex.in, "Corpus directory")->required();
  ext->add_option("--out", ex.out, "Dump file")->required();
  ext->add_option("--max-length", ex.max_length, "Path length limit or inf")->capture_default_str();
  ext->add_option("--max-width", ex.max_width, "Path width limit or inf")->capture_default_str();
  ext->add_option("--max-contexts", ex.max_contexts, "Contexts kept per method")->capture_default_str();
  ext->add_option("--obfuscate", ex.obfuscate, "none, type or random")->capture_default_str();
  ext->add_option("--len", ex.length, "Random name length")->capture_default_str();

  TrainOptions tr;
  auto* trn = app.add_subcommand("train", "Train a name-prediction model on a dump");
  trn->add_option("--dump", tr.dump, "Path-context dump")->required();
  trn->add_option("--out", tr.out, "Checkpoint file")->required();
  trn->add_option("--d-emb", tr.model.d_emb, "Embedding width")->capture_default_str();
  trn->add_option("--epochs", tr.model.epochs)->capture_default_str();
  trn->add_option("--batch-size", tr.model.batch_size)->capture_default_str();
  trn->add_option("--learning-rate", tr.model.learning_rate)->capture_default_str();
  trn->add_option("--patience", tr.model.patience)->capture_default_str();
  trn->add_option("--validation-fraction", tr.model.validation_fraction)->capture_default_str();
  trn->add_flag("--dropout", tr.model.dropout, "Dropout on context vectors");
  trn->add_option("--dropout-rate", tr.model.dropout_rate)->capture_default_str();
  trn->add_option("--init-scale", tr.model.init_scale)->capture_default_str();
  trn->add_option("--min-count", tr.min_count, "Vocabulary document-frequency floor")
      ->capture_default_str();
  trn->add_option("--obfuscation", tr.obfuscation,
                  "Renaming the dump was made with (default: from its manifest)");

  EmbedOptionsCli em;
  auto* emb = app.add_subcommand("embed", "Build class-level datasets from a checkpoint");
  emb->add_option("--model", em.model, "Checkpoint")->required();
  emb->add_option("--in", em.in, "Corpus directory, one subdirectory per label");
  emb->add_option("--pairs", em.pairs, "Pair manifest instead of a corpus");
  emb->add_option("--base", em.base, "Base directory for pair paths");
  emb->add_option("--out", em.out, "CSV file, or directory in suite mode")->required();
  emb->add_option("--selection", em.selection, "all, top<K> or random<K>")->capture_default_str();
  emb->add_option("--aggregation", em.aggregation, "Aggregation name or 'suite'")
      ->capture_default_str();
  emb->add_option("--cap", em.cap, "Rows kept per label")->capture_default_str();
  emb->add_flag("--methods", em.methods, "Write per-method embeddings instead");
  emb->add_option("--len", em.length, "Random name length")->capture_default_str();

  EvaluateOptions ev;
  auto* evl = app.add_subcommand("evaluate", "Cross-validate datasets and report kappa");
  evl->add_option("--data", ev.data, "CSV file or directory of CSVs")->required();
  evl->add_option("--out", ev.out, "Results file, or directory for many")->required();
  evl->add_option("--dataset", ev.dataset, "Dataset name (default: CSV directory name)");
  evl->add_option("--system", ev.system, "System name")->capture_default_str();
  evl->add_option("--c", ev.classifier.c, "Regularization parameter")->capture_default_str();
  evl->add_option("--tolerance", ev.classifier.tolerance)->capture_default_str();
  evl->add_option("--max-iterations", ev.classifier.max_iterations)->capture_default_str();
  evl->add_flag("--no-bias", ev.no_bias, "Fit without a bias feature");
  evl->add_option("--runs", ev.plan.runs)->capture_default_str();
  evl->add_option("--folds", ev.plan.folds)->capture_default_str();
  evl->add_option("--compare", ev.compare, "Results record to t-test against");

  CompareOptions co;
  auto* cmp = app.add_subcommand("compare", "Paired t-test of two results records");
  cmp->add_option("a", co.a)->required();
  cmp->add_option("b", co.b)->required();
  cmp->add_option("--out", co.out, "Also write the record here");

  RankOptions ra;
  auto* rnk = app.add_subcommand("rank", "Rank-score aggregations over results records");
  rnk->add_option("inputs", ra.inputs, "Results files or directories")->required();
  rnk->add_option("--out", ra.out, "Also write the table here");

  XobfOptions xo;
  auto* xob = app.add_subcommand("xobf", "Name-prediction F1 before and after renaming");
  xob->add_option("--model", xo.model, "Checkpoint")->required();
  xob->add_option("--in", xo.in, "Test corpus")->required();
  xob->add_option("--out", xo.out, "JSON report");
  xob->add_option("--len", xo.length, "Random name length")->capture_default_str();

  std::vector<const char*> argv = {"codevec"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    configure_logging(g.log_level);
    if (*obf) return cmd_obfuscate(ob, g, out);
    if (*ext) return cmd_extract(ex, g, out);
    if (*trn) return cmd_train(tr, g, out);
    if (*emb) return cmd_embed(em, g, out);
    if (*evl) return cmd_evaluate(ev, g, out);
    if (*cmp) return cmd_compare(co, out);
    if (*rnk) return cmd_rank(ra, out);
    if (*xob) return cmd_xobf(xo, g, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace codevec
