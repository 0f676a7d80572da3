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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "codevec/aggregate/aggregate.h"
#include "codevec/cli/pipeline.h"
#include "codevec/common/files.h"
#include "codevec/evaluate/evaluate.h"
#include "fixtures.h"
#include "synthetic.h"

namespace codevec {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  args.insert(args.begin(), {"--log-level", "error"});
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string p(const fs::path& path) { return path.string(); }

// Every file under root, keyed by relative path.
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[relative_key(e.path(), root)] = read_text_file(e.path());
  }
  return out;
}

// corpus/<label>/F<i>.java; label t holds classes built from template t
// plus one shared template, so labels are separable by structure.
void write_template_corpus(const fs::path& root, int labels, int per_label,
                           std::uint64_t seed) {
  Rng rng(seed);
  for (int l = 0; l < labels; ++l) {
    for (int i = 0; i < per_label; ++i) {
      testing::write_file(
          root / ("label" + std::to_string(l)) / ("F" + std::to_string(i) + ".java"),
          testing::wrap_class("K" + std::to_string(i),
                              {testing::template_method(l, rng),
                               testing::template_method(4, rng)}));
    }
  }
}

// ---- obfuscate ----

TEST(CliObfuscate, TypeModeOnCounter) {
  testing::TempDir dir("cli_obf");
  testing::write_file(dir / "in" / "Counter.java", testing::read_testdata("figures/Counter.java"));
  const CliRun r = run({"obfuscate", "--in", p(dir / "in"), "--out", p(dir / "out"), "--mode", "type"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = read_text_file(dir / "out" / "Counter.java");
  EXPECT_NE(text.find("param_string_1"), std::string::npos);
  EXPECT_NE(text.find("local_int_1"), std::string::npos);
  EXPECT_NE(text.find("field_int_1"), std::string::npos);
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report.at("processed"), 1);
  EXPECT_TRUE(fs::exists(manifest_path(dir / "out")));
}

TEST(CliObfuscate, MissingInputFails) {
  testing::TempDir dir("cli_obf_missing");
  const CliRun r = run({"obfuscate", "--in", p(dir / "nope"), "--out", p(dir / "out"), "--mode", "type"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_NE(run({"obfuscate", "--in", p(dir.path()), "--out", p(dir / "o"), "--mode", "bogus"}).code, 0);
}

TEST(CliObfuscate, RandomModeIsReproducible) {
  testing::TempDir dir("cli_obf_rand");
  write_template_corpus(dir / "in", 3, 4, 1);
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(run({"--seed", "7", "obfuscate", "--in", p(dir / "in"), "--out", p(dir / out),
                   "--mode", "random"}).code, 0);
  }
  EXPECT_EQ(snapshot(dir / "a"), snapshot(dir / "b"));
  EXPECT_NE(snapshot(dir / "a"), snapshot(dir / "in"));
}

// ---- extract ----

TEST(CliExtract, OneLinePerMethod) {
  testing::TempDir dir("cli_ext");
  testing::write_file(dir / "in" / "Two.java",
                      "class Two { int a(int x) { return x + 1; } void b() { int y = 2; y++; } }");
  const CliRun r = run({"extract", "--in", p(dir / "in"), "--out", p(dir / "dump.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(read_text_file(dir / "dump.txt"));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) n += !line.empty();
  EXPECT_EQ(n, 2);
  EXPECT_NE(r.out.find("methods 2"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "dump.txt.meta"));
  EXPECT_TRUE(fs::exists(dir / "dump.txt.vocab.tsv"));
}

TEST(CliExtract, AssignmentTriplet) {
  testing::TempDir dir("cli_ext_assign");
  testing::write_file(dir / "in" / "Assign.java", testing::read_testdata("figures/Assign.java"));
  ASSERT_EQ(run({"extract", "--in", p(dir / "in"), "--out", p(dir / "d.txt")}).code, 0);
  EXPECT_NE(read_text_file(dir / "d.txt").find("x,NameExpr↑AssignExpr↓IntegerLiteralExpr,7"),
            std::string::npos);
}

TEST(CliExtract, RerunIsByteIdentical) {
  testing::TempDir dir("cli_ext_rerun");
  write_template_corpus(dir / "in", 5, 4, 2);
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(run({"--seed", "4", "--jobs", "3", "extract", "--in", p(dir / "in"), "--out",
                   p(dir / out / "dump.txt"), "--max-contexts", "20", "--obfuscate", "random"})
                  .code,
              0);
  }
  auto a = snapshot(dir / "a");
  auto b = snapshot(dir / "b");
  a.erase("dump.txt.manifest.json");
  b.erase("dump.txt.manifest.json");
  EXPECT_EQ(a, b);
}

TEST(CliExtract, UnlimitedLimitsAccepted) {
  testing::TempDir dir("cli_ext_inf");
  testing::write_file(dir / "in" / "Assign.java", testing::read_testdata("figures/Assign.java"));
  EXPECT_EQ(run({"extract", "--in", p(dir / "in"), "--out", p(dir / "d.txt"), "--max-length",
                 "inf", "--max-width", "inf"}).code,
            0);
  EXPECT_NE(run({"extract", "--in", p(dir / "in"), "--out", p(dir / "d.txt"), "--max-length",
                 "long"}).code,
            0);
}

// ---- train ----

class CliPipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir("cli_pipeline");
    // 40 files per template label, one method each, for the training dump.
    Rng rng(3);
    for (int t = 0; t < testing::kTemplateCount; ++t) {
      for (int i = 0; i < 40; ++i) {
        testing::write_file((*dir_) / "train" / ("T" + std::to_string(t)) /
                                ("F" + std::to_string(i) + ".java"),
                            testing::wrap_class("C", {testing::template_method(t, rng)}));
      }
    }
    write_template_corpus((*dir_) / "classes", 2, 12, 5);
    ASSERT_EQ(run({"extract", "--in", p((*dir_) / "train"), "--out", p(dump())}).code, 0);
    ASSERT_EQ(run({"--seed", "3", "train", "--dump", p(dump()), "--out", p(model()),
                   "--d-emb", "16", "--learning-rate", "0.01", "--batch-size", "16"})
                  .code,
              0);
  }
  static void TearDownTestSuite() { delete dir_; }

  static fs::path dump() { return (*dir_) / "dump.txt"; }
  static fs::path model() { return (*dir_) / "model.ckpt"; }
  static fs::path path(const std::string& child) { return (*dir_) / child; }

  static testing::TempDir* dir_;
};

testing::TempDir* CliPipeline::dir_ = nullptr;

TEST_F(CliPipeline, TrainingSeparatesTemplates) {
  const auto m = nlohmann::json::parse(read_text_file(manifest_path(model())));
  const int best = m.at("best_epoch");
  ASSERT_GE(best, 1);
  EXPECT_GE(m.at("history").at(best - 1).at("validation_accuracy").get<double>(), 0.9);
  EXPECT_EQ(m.at("checkpoint_hash"), checkpoint_hash(model()));
  EXPECT_NO_THROW(load_checkpoint(model()));
}

TEST_F(CliPipeline, TrainingIsReproducibleAndZeroEpochsLoads) {
  ASSERT_EQ(run({"--seed", "3", "train", "--dump", p(dump()), "--out", p(path("again.ckpt")),
                 "--d-emb", "16", "--learning-rate", "0.01", "--batch-size", "16"})
                .code,
            0);
  EXPECT_EQ(read_text_file(model()), read_text_file(path("again.ckpt")));
  const CliRun zero = run({"train", "--dump", p(dump()), "--out", p(path("zero.ckpt")),
                        "--epochs", "0", "--d-emb", "4"});
  ASSERT_EQ(zero.code, 0) << zero.err;
  EXPECT_EQ(load_checkpoint(path("zero.ckpt")).params.d_emb(), 4);
}

TEST_F(CliPipeline, EmbedMeanDataset) {
  const CliRun r = run({"embed", "--model", p(model()), "--in", p(path("classes")), "--out",
                     p(path("mean.csv"))});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = read_text_file(path("mean.csv"));
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 48);
  const LabeledDataset ds = read_dataset_csv(path("mean.csv"));
  EXPECT_EQ(ds.rows.size(), 24u);
  const auto m = nlohmann::json::parse(read_text_file(manifest_path(path("mean.csv"))));
  EXPECT_EQ(m.at("rows").size(), 24u);
  EXPECT_EQ(m.at("checkpoint_hash"), checkpoint_hash(model()));

  ASSERT_EQ(run({"embed", "--model", p(model()), "--in", p(path("classes")), "--out",
                 p(path("mean2.csv"))}).code, 0);
  EXPECT_EQ(csv, read_text_file(path("mean2.csv")));
}

TEST_F(CliPipeline, EmbedPairsAndSuite) {
  testing::write_file(path("pairs.tsv"),
                      "dup\tclasses/label0/F0.java\tclasses/label0/F0.java\n"
                      "other\tclasses/label0/F1.java\tclasses/label1/F1.java\n");
  ASSERT_EQ(run({"embed", "--model", p(model()), "--pairs", p(path("pairs.tsv")), "--out",
                 p(path("pairs.csv"))}).code,
            0);
  const LabeledDataset pairs = read_dataset_csv(path("pairs.csv"));
  ASSERT_EQ(pairs.rows.size(), 2u);
  for (const auto& row : pairs.rows) {
    if (row.label == "dup") {
      EXPECT_EQ(row.values, Vector::Zero(row.values.size()));
    } else {
      EXPECT_GT(row.values.norm(), 0);
    }
  }
  const CliRun suite = run({"embed", "--model", p(model()), "--in", p(path("classes")),
                         "--out", p(path("suite")), "--aggregation", "suite"});
  ASSERT_EQ(suite.code, 0) << suite.err;
  int csvs = 0;
  for (const auto& s : standard_agg_suite()) {
    csvs += fs::exists(path("suite") / (s.name() + ".csv"));
  }
  EXPECT_EQ(csvs, 23);
}

TEST_F(CliPipeline, EmbedMethods) {
  ASSERT_EQ(run({"embed", "--model", p(model()), "--in", p(path("classes")), "--out",
                 p(path("methods.csv")), "--methods"}).code,
            0);
  const std::string csv = read_text_file(path("methods.csv"));
  EXPECT_EQ(csv.rfind("sourcePath,methodName,v0,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 48);
}

TEST_F(CliPipeline, EvaluateCompareAndRank) {
  ASSERT_EQ(run({"embed", "--model", p(model()), "--in", p(path("classes")), "--out",
                 p(path("ev/suite")), "--aggregation", "suite"}).code,
            0);
  const CliRun ev = run({"evaluate", "--data", p(path("ev/suite/mean.csv")), "--out",
                      p(path("ev/mean.results")), "--folds", "4", "--runs", "3"});
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_NE(ev.out.find("1.0000"), std::string::npos) << ev.out;
  EXPECT_EQ(read_report(path("ev/mean.results")).mean_kappa, 1.0);

  const CliRun all = run({"evaluate", "--data", p(path("ev/suite")), "--out",
                       p(path("ev/results")), "--folds", "4", "--runs", "3"});
  ASSERT_EQ(all.code, 0) << all.err;
  const CliRun cmp = run({"compare", p(path("ev/results/mean.results")),
                       p(path("ev/results/min.results"))});
  ASSERT_EQ(cmp.code, 0) << cmp.err;
  EXPECT_NE(cmp.out.find("p_value\t"), std::string::npos);

  const CliRun ranked = run({"rank", p(path("ev/results"))});
  ASSERT_EQ(ranked.code, 0) << ranked.err;
  std::istringstream lines(ranked.out);
  std::string line;
  std::getline(lines, line);
  std::vector<int> scores;
  while (std::getline(lines, line)) scores.push_back(std::stoi(line.substr(line.find('\t') + 1)));
  ASSERT_EQ(scores.size(), 23u);
  EXPECT_EQ(std::vector<int>(scores.begin(), scores.begin() + 6),
            (std::vector<int>{5, 4, 3, 2, 1, 0}));

  // Different seeds give different partitions, which compare refuses.
  ASSERT_EQ(run({"--seed", "9", "evaluate", "--data", p(path("ev/suite/mean.csv")), "--out",
                 p(path("ev/other.results")), "--folds", "4", "--runs", "3"}).code,
            0);
  const CliRun bad = run({"compare", p(path("ev/mean.results")), p(path("ev/other.results"))});
  EXPECT_NE(bad.code, 0);
  EXPECT_NE(bad.err.find("partition"), std::string::npos);
}

TEST_F(CliPipeline, RankReproducesWorkedScores) {
  const std::vector<std::pair<std::string, double>> column = {
      {"meanStddev", 0.736}, {"minMaxMean", 0.734}, {"mean", 0.730},
      {"maxMean", 0.729},    {"sumMean", 0.728},    {"median", 0.70}};
  for (const auto& [name, k] : column) {
    EvalReport r;
    r.dataset = "algorithms";
    r.aggregation = name;
    r.mean_kappa = k;
    write_report(path("rank/" + name + ".results"), r);
  }
  const CliRun ranked = run({"rank", p(path("rank"))});
  ASSERT_EQ(ranked.code, 0) << ranked.err;
  EXPECT_EQ(ranked.out,
            "aggregation\tscore\nmeanStddev\t5\nminMaxMean\t4\nmean\t3\nmaxMean\t2\n"
            "sumMean\t1\nmedian\t0\n");
}

TEST_F(CliPipeline, CrossObfuscationReport) {
  const CliRun r = run({"xobf", "--model", p(model()), "--in", p(path("classes")), "--out",
                     p(path("xobf.json"))});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("f1 plain"), std::string::npos);
  const auto m = nlohmann::json::parse(read_text_file(path("xobf.json")));
  EXPECT_EQ(m.at("methods"), 48);
  fs::create_directories(path("empty"));
  const CliRun empty = run({"xobf", "--model", p(model()), "--in", p(path("empty"))});
  EXPECT_NE(empty.code, 0);
}

TEST_F(CliPipeline, RandomObfuscatedModelIsRenameInvariant) {
  ASSERT_EQ(run({"--seed", "2", "extract", "--in", p(path("train")), "--out",
                 p(path("rand/dump.txt")), "--obfuscate", "random"}).code,
            0);
  ASSERT_EQ(run({"--seed", "2", "train", "--dump", p(path("rand/dump.txt")), "--out",
                 p(path("rand/model.ckpt")), "--d-emb", "8", "--epochs", "3",
                 "--learning-rate", "0.01"}).code,
            0);
  EXPECT_EQ(load_checkpoint(path("rand/model.ckpt")).obfuscation, "random");
  const CliRun r = run({"xobf", "--model", p(path("rand/model.ckpt")), "--in", p(path("classes")),
                     "--out", p(path("rand/xobf.json"))});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = nlohmann::json::parse(read_text_file(path("rand/xobf.json")));
  EXPECT_LT(std::abs(m.at("drop").get<double>()), 0.01);
}

// ---- config and errors ----

TEST(CliConfig, FlagsOverrideConfigFile) {
  testing::TempDir dir("cli_config");
  testing::write_file(dir / "in" / "Two.java",
                      "class Two { int a(int x) { int s = x * 2; return s + 1; } }");
  testing::write_file(dir / "run.ini",
                      "seed = 5\n[extract]\nmax-contexts = 1\nmax-length = 3\n");
  ASSERT_EQ(run({"--config", p(dir / "run.ini"), "extract", "--in", p(dir / "in"), "--out",
                 p(dir / "a.txt")}).code,
            0);
  ASSERT_EQ(run({"--config", p(dir / "run.ini"), "extract", "--in", p(dir / "in"), "--out",
                 p(dir / "b.txt"), "--max-contexts", "50"}).code,
            0);
  const auto a = nlohmann::json::parse(read_text_file(dir / "a.txt.manifest.json"));
  const auto b = nlohmann::json::parse(read_text_file(dir / "b.txt.manifest.json"));
  EXPECT_EQ(a.at("seed"), 5);
  EXPECT_EQ(a.at("config").at("limits").at("max_contexts"), 1);
  EXPECT_EQ(a.at("config").at("limits").at("max_length"), "3");
  EXPECT_EQ(b.at("config").at("limits").at("max_contexts"), 50);
  EXPECT_EQ(a.at("counts").at("contexts"), 1);
}

TEST(CliErrors, UsageErrorsExitNonzero) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"frobnicate"}).code, 0);
  EXPECT_NE(run({"train", "--dump", "/nonexistent/d.txt", "--out", "/tmp/x.ckpt"}).code, 0);
  EXPECT_NE(run({"evaluate", "--data", "/nonexistent.csv", "--out", "/tmp/r"}).code, 0);
  EXPECT_EQ(run({"--version"}).code, 0);
}

}  // namespace
}  // namespace codevec
