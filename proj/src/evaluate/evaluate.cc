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


#include "codevec/evaluate/evaluate.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "codevec/common/files.h"
#include "codevec/common/parallel.h"
#include "codevec/common/random.h"

namespace codevec {

namespace {

constexpr std::string_view kReportFormat = "codevec-results 1";

double parse_double(const std::string& s) {
  double x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("bad number in results record: '" + s + "'");
  }
  return x;
}

template <typename Int>
Int parse_int(const std::string& s) {
  Int x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("bad integer in results record: '" + s + "'");
  }
  return x;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

void check_field(const std::string& s) {
  if (s.find_first_of("\t\r\n") != std::string::npos) {
    throw std::invalid_argument("results record field contains a tab or newline: " + s);
  }
}

}  // namespace

void CvPlan::validate() const {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (folds < 2) throw std::invalid_argument("folds must be >= 2");
}

std::vector<int> stratified_folds(const std::vector<int>& y, int folds,
                                  std::uint64_t seed, int run) {
  std::vector<int> first_seen;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < y.size(); ++i) {
    auto it = std::find(first_seen.begin(), first_seen.end(), y[i]);
    if (it == first_seen.end()) {
      first_seen.push_back(y[i]);
      members.emplace_back();
      it = first_seen.end() - 1;
    }
    members[static_cast<std::size_t>(it - first_seen.begin())].push_back(i);
  }
  std::vector<int> fold(y.size(), 0);
  const std::uint64_t run_seed = derive_seed(seed, static_cast<std::uint64_t>(run));
  std::size_t deal = 0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    Rng rng(derive_seed(run_seed, static_cast<std::uint64_t>(c)));
    rng.shuffle(members[c]);
    for (std::size_t i : members[c]) {
      fold[i] = static_cast<int>(deal++ % static_cast<std::size_t>(folds));
    }
  }
  return fold;
}

std::string partition_fingerprint(const std::vector<int>& y, const CvPlan& plan) {
  std::uint64_t h = fnv1a64("");
  for (int run = 0; run < plan.runs; ++run) {
    for (int f : stratified_folds(y, plan.folds, plan.seed, run)) {
      const auto byte = static_cast<char>(f & 0xff);
      h = fnv1a64(std::string_view(&byte, 1), h);
    }
    h = fnv1a64("|", h);
  }
  return hex64(h);
}

std::vector<double> EvalReport::flat_kappa() const {
  std::vector<double> out;
  for (const auto& run : fold_kappa) out.insert(out.end(), run.begin(), run.end());
  return out;
}

EvalReport cross_validate(const LabeledDataset& dataset,
                          const ClassifierConfig& config, const CvPlan& plan,
                          int jobs) {
  config.validate();
  plan.validate();
  const Design design = to_design(dataset);
  const std::size_t classes = design.labels.size();
  std::vector<int> per_label(classes, 0);
  for (int c : design.y) ++per_label[static_cast<std::size_t>(c)];
  if (std::count_if(per_label.begin(), per_label.end(), [](int n) { return n > 0; }) < 2) {
    throw DegenerateData("cross-validation needs at least two labels");
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (per_label[c] < plan.folds) {
      throw TooFewRows("label '" + design.labels[c] + "' has " +
                       std::to_string(per_label[c]) + " rows, fewer than " +
                       std::to_string(plan.folds) + " folds");
    }
  }

  std::vector<std::vector<int>> partitions;
  for (int run = 0; run < plan.runs; ++run) {
    partitions.push_back(stratified_folds(design.y, plan.folds, plan.seed, run));
  }
  const auto tasks = static_cast<std::size_t>(plan.runs * plan.folds);
  std::vector<ConfusionMatrix> confusion(tasks);
  parallel_for(tasks, jobs, [&](std::size_t t) {
    const auto& fold_of = partitions[t / static_cast<std::size_t>(plan.folds)];
    const int fold = static_cast<int>(t % static_cast<std::size_t>(plan.folds));
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
      (fold_of[i] == fold ? test_rows : train_rows).push_back(i);
    }
    const LinearModel model = train_linear(design, train_rows, config);
    ConfusionMatrix cm(classes, std::vector<std::int64_t>(classes, 0));
    for (std::size_t i : test_rows) {
      const int predicted = model.predict(design.x.row(static_cast<Eigen::Index>(i)).transpose());
      ++cm[static_cast<std::size_t>(design.y[i])][static_cast<std::size_t>(predicted)];
    }
    confusion[t] = std::move(cm);
  });

  EvalReport report;
  report.labels = design.labels;
  report.runs = plan.runs;
  report.folds = plan.folds;
  report.seed = plan.seed;
  report.fingerprint = partition_fingerprint(design.y, plan);
  report.confusion_total.assign(classes, std::vector<std::int64_t>(classes, 0));
  report.fold_kappa.assign(static_cast<std::size_t>(plan.runs), {});
  double kappa_sum = 0, accuracy_sum = 0;
  for (std::size_t t = 0; t < tasks; ++t) {
    const ConfusionMatrix& cm = confusion[t];
    std::int64_t total = 0, hits = 0;
    for (std::size_t r = 0; r < classes; ++r) {
      for (std::size_t c = 0; c < classes; ++c) {
        total += cm[r][c];
        report.confusion_total[r][c] += cm[r][c];
      }
      hits += cm[r][r];
    }
    const double k = kappa(cm);
    report.fold_kappa[t / static_cast<std::size_t>(plan.folds)].push_back(k);
    kappa_sum += k;
    accuracy_sum += static_cast<double>(hits) / static_cast<double>(total);
  }
  report.mean_kappa = kappa_sum / static_cast<double>(tasks);
  report.mean_accuracy = accuracy_sum / static_cast<double>(tasks);
  return report;
}

TTestResult paired_ttest(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired t-test needs equal-length series");
  }
  if (a.size() < 2) throw std::invalid_argument("paired t-test needs at least two pairs");
  const auto n = static_cast<double>(a.size());
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  TTestResult r;
  r.n = static_cast<int>(a.size());
  r.mean_diff = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0;
  for (double x : d) ss += (x - r.mean_diff) * (x - r.mean_diff);
  const double se = std::sqrt(ss / (n - 1) / n);
  if (se == 0) {
    const bool all_zero = std::all_of(d.begin(), d.end(), [](double x) { return x == 0; });
    r.t = all_zero ? 0 : std::copysign(std::numeric_limits<double>::infinity(), r.mean_diff);
    r.p_value = all_zero ? 1 : 0;
  } else {
    r.t = r.mean_diff / se;
    const boost::math::students_t dist(n - 1);
    r.p_value = std::min(1.0, 2 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  }
  r.significant = r.p_value < kSignificanceLevel;
  return r;
}

TTestResult compare_reports(const EvalReport& a, const EvalReport& b) {
  if (a.fingerprint != b.fingerprint || a.runs != b.runs || a.folds != b.folds) {
    throw MismatchedFolds("results come from different fold partitions (" +
                          a.fingerprint + " vs " + b.fingerprint + ")");
  }
  return paired_ttest(a.flat_kappa(), b.flat_kappa());
}

bool canonical_name_less(const std::string& a, const std::string& b) {
  static const std::vector<std::string> suite = [] {
    std::vector<std::string> names;
    for (const auto& s : standard_agg_suite()) names.push_back(s.name());
    return names;
  }();
  auto rank = [&](const std::string& name) {
    std::string canonical = name;
    try {
      canonical = AggregationSpec::parse(name).name();
    } catch (const std::invalid_argument&) {
    }
    return static_cast<std::size_t>(
        std::find(suite.begin(), suite.end(), canonical) - suite.begin());
  };
  const std::size_t ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

std::map<std::string, int> rank_aggregations(
    const std::map<std::string, std::map<std::string, double>>& per_dataset) {
  std::map<std::string, int> totals;
  for (const auto& [dataset, scores] : per_dataset) {
    std::vector<std::pair<std::string, double>> order(scores.begin(), scores.end());
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return canonical_name_less(x.first, y.first);
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      totals[order[i].first] += i < 5 ? static_cast<int>(5 - i) : 0;
    }
  }
  return totals;
}

Similarity vector_similarity(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("vector lengths differ");
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0 || nv == 0) throw ZeroVector("cosine of a zero vector");
  Similarity s;
  s.cosine = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  s.euclidean = (u - v).norm();
  return s;
}

std::string format_report(const EvalReport& r) {
  std::ostringstream out;
  check_field(r.dataset);
  check_field(r.aggregation);
  check_field(r.system);
  out << "format\t" << kReportFormat << "\n";
  out << "dataset\t" << r.dataset << "\n";
  out << "aggregation\t" << r.aggregation << "\n";
  out << "system\t" << r.system << "\n";
  for (const std::string& l : r.labels) {
    check_field(l);
    out << "label\t" << l << "\n";
  }
  out << "runs\t" << r.runs << "\nfolds\t" << r.folds << "\nseed\t" << r.seed << "\n";
  out << "fingerprint\t" << r.fingerprint << "\n";
  out << "mean_kappa\t" << format_double(r.mean_kappa) << "\n";
  out << "mean_accuracy\t" << format_double(r.mean_accuracy) << "\n";
  for (std::size_t run = 0; run < r.fold_kappa.size(); ++run) {
    out << "kappa\t" << run;
    for (double k : r.fold_kappa[run]) out << "\t" << format_double(k);
    out << "\n";
  }
  for (std::size_t row = 0; row < r.confusion_total.size(); ++row) {
    out << "confusion\t" << row;
    for (std::int64_t c : r.confusion_total[row]) out << "\t" << c;
    out << "\n";
  }
  return out.str();
}

EvalReport parse_report(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  EvalReport r;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() < 2) throw IoError("malformed results line: " + line);
    const std::string& key = f[0];
    if (key == "format") {
      if (f[1] != kReportFormat) throw IoError("unsupported results format: " + f[1]);
      header = true;
    } else if (key == "dataset") {
      r.dataset = f[1];
    } else if (key == "aggregation") {
      r.aggregation = f[1];
    } else if (key == "system") {
      r.system = f[1];
    } else if (key == "label") {
      r.labels.push_back(f[1]);
    } else if (key == "runs") {
      r.runs = parse_int<int>(f[1]);
    } else if (key == "folds") {
      r.folds = parse_int<int>(f[1]);
    } else if (key == "seed") {
      r.seed = parse_int<std::uint64_t>(f[1]);
    } else if (key == "fingerprint") {
      r.fingerprint = f[1];
    } else if (key == "mean_kappa") {
      r.mean_kappa = parse_double(f[1]);
    } else if (key == "mean_accuracy") {
      r.mean_accuracy = parse_double(f[1]);
    } else if (key == "kappa") {
      std::vector<double> row;
      for (std::size_t i = 2; i < f.size(); ++i) row.push_back(parse_double(f[i]));
      r.fold_kappa.push_back(std::move(row));
    } else if (key == "confusion") {
      std::vector<std::int64_t> row;
      for (std::size_t i = 2; i < f.size(); ++i) row.push_back(parse_int<std::int64_t>(f[i]));
      r.confusion_total.push_back(std::move(row));
    } else {
      throw IoError("unknown results key: " + key);
    }
  }
  if (!header) throw IoError("not a results record");
  if (static_cast<int>(r.fold_kappa.size()) != r.runs) {
    throw IoError("results record has " + std::to_string(r.fold_kappa.size()) +
                  " kappa rows for " + std::to_string(r.runs) + " runs");
  }
  for (const auto& row : r.fold_kappa) {
    if (static_cast<int>(row.size()) != r.folds) {
      throw IoError("results record kappa row does not match the fold count");
    }
  }
  return r;
}

void write_report(const std::filesystem::path& path, const EvalReport& report) {
  write_text_file(path, format_report(report));
}

EvalReport read_report(const std::filesystem::path& path) {
  return parse_report(read_text_file(path));
}

std::string format_ttest(const TTestResult& r) {
  std::ostringstream out;
  out << "format\tcodevec-ttest 1\n";
  out << "n\t" << r.n << "\n";
  out << "mean_diff\t" << format_double(r.mean_diff) << "\n";
  out << "t\t" << format_double(r.t) << "\n";
  out << "p_value\t" << format_double(r.p_value) << "\n";
  out << "significant\t" << (r.significant ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace codevec
