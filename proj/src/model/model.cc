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


#include "codevec/model/model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "codevec/common/files.h"
#include "codevec/evaluate/metrics.h"

namespace codevec {

namespace {

constexpr char kMagic[8] = {'C', 'V', 'E', 'C', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;

bool is_padding(const IdContext& c) {
  return c.start == Vocabulary::kPad && c.path == Vocabulary::kPad &&
         c.end == Vocabulary::kPad;
}

Vector softmax(const Vector& z) {
  const double top = z.maxCoeff();
  Vector e = (z.array() - top).exp();
  return e / e.sum();
}

// Intermediate values of one sample's forward pass, kept for backprop.
struct Trace {
  std::vector<Eigen::Index> real;  // positions of non-padding contexts
  Matrix c;                        // m x d_code, after dropout
  Matrix mask;                     // dropout scale per entry, if enabled
  Matrix h;                        // tanh(c W^T)
  Vector alpha;
  Vector v;
  Vector scores;
};

void check_id(std::int32_t id, Eigen::Index rows, const char* table) {
  if (id < 0 || id >= rows) {
    throw std::out_of_range(std::string(table) + " id out of range: " +
                            std::to_string(id));
  }
}

Trace run_forward(const ModelParams& p, const IdSample& sample, Rng* dropout,
                  double rate) {
  Trace t;
  for (std::size_t i = 0; i < sample.contexts.size(); ++i) {
    if (!is_padding(sample.contexts[i])) {
      t.real.push_back(static_cast<Eigen::Index>(i));
    }
  }
  if (t.real.empty()) throw EmptyBag("sample has no path-contexts");
  const Eigen::Index d = p.d_emb();
  const auto m = static_cast<Eigen::Index>(t.real.size());
  t.c.resize(m, 3 * d);
  for (Eigen::Index r = 0; r < m; ++r) {
    const IdContext& ctx = sample.contexts[t.real[r]];
    check_id(ctx.start, p.token_emb.rows(), "token");
    check_id(ctx.path, p.path_emb.rows(), "path");
    check_id(ctx.end, p.token_emb.rows(), "token");
    t.c.row(r).segment(0, d) = p.token_emb.row(ctx.start);
    t.c.row(r).segment(d, d) = p.path_emb.row(ctx.path);
    t.c.row(r).segment(2 * d, d) = p.token_emb.row(ctx.end);
  }
  if (dropout) {
    const double keep = 1.0 - rate;
    t.mask.resize(t.c.rows(), t.c.cols());
    for (Eigen::Index i = 0; i < t.mask.size(); ++i) {
      t.mask.data()[i] = dropout->uniform_real() < rate ? 0.0 : 1.0 / keep;
    }
    t.c.array() *= t.mask.array();
  }
  t.h = (t.c * p.w.transpose()).array().tanh();
  t.alpha = softmax(t.h * p.a);
  t.v = t.h.transpose() * t.alpha;
  t.scores = p.target_emb * t.v;
  return t;
}

double log_sum_exp(const Vector& z) {
  const double top = z.maxCoeff();
  return top + std::log((z.array() - top).exp().sum());
}

void zero_like(const ModelParams& p, ModelParams& g) {
  g.token_emb.setZero(p.token_emb.rows(), p.token_emb.cols());
  g.path_emb.setZero(p.path_emb.rows(), p.path_emb.cols());
  g.w.setZero(p.w.rows(), p.w.cols());
  g.a.setZero(p.a.size());
  g.target_emb.setZero(p.target_emb.rows(), p.target_emb.cols());
}

// Little-endian writer and reader for the checkpoint container.
class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    out_.append(static_cast<const char*>(data), n);
  }
  void u64(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) out_ += static_cast<char>((x >> (8 * i)) & 0xff);
  }
  void u32(std::uint32_t x) {
    for (int i = 0; i < 4; ++i) out_ += static_cast<char>((x >> (8 * i)) & 0xff);
  }
  void i64(std::int64_t x) { u64(static_cast<std::uint64_t>(x)); }
  void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }
  void str(const std::string& s) {
    u64(s.size());
    out_ += s;
  }
  template <typename M>
  void tensor(const M& m) {
    u64(static_cast<std::uint64_t>(m.rows()));
    u64(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      u32(std::bit_cast<std::uint32_t>(static_cast<float>(m.data()[i])));
    }
  }
  const std::string& data() const { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}
  void need(std::size_t n) {
    if (pos_ + n > data_.size()) throw IoError("checkpoint is truncated");
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) {
      x |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_++]))
           << (8 * i);
    }
    return x;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) {
      x |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_++]))
           << (8 * i);
    }
    return x;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint64_t n = u64();
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string raw(std::size_t n) {
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename M>
  void tensor(M& m) {
    const auto rows = static_cast<Eigen::Index>(u64());
    const auto cols = static_cast<Eigen::Index>(u64());
    need(static_cast<std::size_t>(rows * cols) * 4);
    if constexpr (M::ColsAtCompileTime == 1) {
      if (cols != 1) throw IoError("checkpoint tensor shape mismatch");
      m.resize(rows);
    } else {
      m.resize(rows, cols);
    }
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = static_cast<double>(std::bit_cast<float>(u32()));
    }
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

void write_vocab(Writer& w, const Vocabulary& v) {
  w.u64(static_cast<std::uint64_t>(v.size()));
  for (const std::string& s : v.strings()) w.str(s);
}

Vocabulary read_vocab(Reader& r) {
  const std::uint64_t n = r.u64();
  Vocabulary v;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::string s = r.str();
    if (v.add(s) != static_cast<std::int32_t>(i)) {
      throw IoError("checkpoint vocabulary is malformed");
    }
  }
  return v;
}

}  // namespace

void ModelConfig::validate() const {
  if (d_emb <= 0) throw ConfigError("d_emb must be positive");
  if (max_contexts <= 0) throw ConfigError("max_contexts must be positive");
  if (!(learning_rate > 0)) throw ConfigError("learning_rate must be positive");
  if (batch_size <= 0) throw ConfigError("batch_size must be positive");
  if (epochs < 0) throw ConfigError("epochs must be nonnegative");
  if (patience <= 0) throw ConfigError("patience must be positive");
  if (!(beta1 >= 0 && beta1 < 1 && beta2 >= 0 && beta2 < 1)) {
    throw ConfigError("Adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (!(validation_fraction >= 0 && validation_fraction < 1)) {
    throw ConfigError("validation_fraction must lie in [0, 1)");
  }
  if (!(dropout_rate >= 0 && dropout_rate < 1)) {
    throw ConfigError("dropout_rate must lie in [0, 1)");
  }
  if (!(init_scale > 0)) throw ConfigError("init_scale must be positive");
}

ModelParams ModelParams::zeros(int tokens, int paths, int targets, int d_emb) {
  const int dc = 3 * d_emb;
  ModelParams p;
  p.token_emb = Matrix::Zero(tokens, d_emb);
  p.path_emb = Matrix::Zero(paths, d_emb);
  p.w = Matrix::Zero(dc, dc);
  p.a = Vector::Zero(dc);
  p.target_emb = Matrix::Zero(targets, dc);
  return p;
}

ModelParams ModelParams::random(int tokens, int paths, int targets, int d_emb,
                                double scale, Rng& rng) {
  ModelParams p = zeros(tokens, paths, targets, d_emb);
  p.for_each([&](auto& t) {
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      t.data()[i] = rng.uniform_real(-scale, scale);
    }
  });
  return p;
}

ForwardResult forward(const ModelParams& params, const IdSample& sample) {
  const Trace t = run_forward(params, sample, nullptr, 0.0);
  ForwardResult out;
  out.code = t.v;
  out.attention = Vector::Zero(static_cast<Eigen::Index>(sample.contexts.size()));
  for (std::size_t r = 0; r < t.real.size(); ++r) {
    out.attention[t.real[r]] = t.alpha[static_cast<Eigen::Index>(r)];
  }
  out.probs = softmax(t.scores);
  return out;
}

double loss_and_grads(const ModelParams& p,
                      const std::vector<const IdSample*>& batch,
                      ModelParams& g, Rng* dropout_rng, double dropout_rate) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  zero_like(p, g);
  const double scale = 1.0 / static_cast<double>(batch.size());
  const Eigen::Index d = p.d_emb();
  double loss = 0;
  for (const IdSample* sample : batch) {
    check_id(sample->target, p.target_emb.rows(), "target");
    const Trace t = run_forward(p, *sample, dropout_rng, dropout_rate);
    loss += log_sum_exp(t.scores) - t.scores[sample->target];

    Vector dscores = softmax(t.scores);
    dscores[sample->target] -= 1.0;
    dscores *= scale;
    g.target_emb.noalias() += dscores * t.v.transpose();
    const Vector dv = p.target_emb.transpose() * dscores;

    // v = H^T alpha
    Matrix dh = t.alpha * dv.transpose();
    const Vector dalpha = t.h * dv;
    // alpha = softmax(z)
    const Vector dz =
        t.alpha.array() * (dalpha.array() - t.alpha.dot(dalpha));
    // z = H a
    g.a.noalias() += t.h.transpose() * dz;
    dh.noalias() += dz * p.a.transpose();
    // H = tanh(C W^T)
    const Matrix du = dh.array() * (1.0 - t.h.array().square());
    g.w.noalias() += du.transpose() * t.c;
    Matrix dc = du * p.w;
    if (dropout_rng) dc.array() *= t.mask.array();
    for (std::size_t r = 0; r < t.real.size(); ++r) {
      const IdContext& ctx = sample->contexts[t.real[r]];
      const auto row = static_cast<Eigen::Index>(r);
      g.token_emb.row(ctx.start) += dc.row(row).segment(0, d);
      g.path_emb.row(ctx.path) += dc.row(row).segment(d, d);
      g.token_emb.row(ctx.end) += dc.row(row).segment(2 * d, d);
    }
  }
  return loss * scale;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_train_validation(std::size_t n, double fraction, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (n < 2 || fraction <= 0) return {order, order};
  Rng rng(derive_seed(seed, "split"));
  rng.shuffle(order);
  auto n_val = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
  std::vector<std::size_t> val(order.begin(), order.begin() + static_cast<long>(n_val));
  std::vector<std::size_t> tr(order.begin() + static_cast<long>(n_val), order.end());
  std::sort(val.begin(), val.end());
  std::sort(tr.begin(), tr.end());
  return {tr, val};
}

namespace {

std::int32_t argmax(const Vector& x) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (x[i] > x[best]) best = i;
  }
  return static_cast<std::int32_t>(best);
}

EpochMetrics validate_epoch(const ModelParams& p,
                            const std::vector<const IdSample*>& val,
                            const Vocabulary& targets) {
  EpochMetrics m;
  std::vector<std::pair<std::string, std::string>> names;
  std::size_t correct = 0;
  double loss = 0;
  for (const IdSample* s : val) {
    const Trace t = run_forward(p, *s, nullptr, 0.0);
    loss += log_sum_exp(t.scores) - t.scores[s->target];
    const std::int32_t pred = argmax(t.scores);
    correct += pred == s->target;
    names.emplace_back(targets.at(s->target), targets.at(pred));
  }
  const auto n = static_cast<double>(val.size());
  m.validation_loss = loss / n;
  m.validation_accuracy = static_cast<double>(correct) / n;
  m.validation_f1 = name_prediction_f1(names).f1;
  return m;
}

struct AdamState {
  ModelParams m;
  ModelParams v;
  long step = 0;
};

void adam_update(ModelParams& p, const ModelParams& g, AdamState& s,
                 const ModelConfig& c) {
  ++s.step;
  const double b1t = 1.0 - std::pow(c.beta1, static_cast<double>(s.step));
  const double b2t = 1.0 - std::pow(c.beta2, static_cast<double>(s.step));
  auto update = [&](auto& param, const auto& grad, auto& m, auto& v) {
    m = c.beta1 * m + (1.0 - c.beta1) * grad;
    v = (c.beta2 * v.array() + (1.0 - c.beta2) * grad.array().square()).matrix();
    param.array() -= c.learning_rate * (m.array() / b1t) /
                     ((v.array() / b2t).sqrt() + c.epsilon);
  };
  update(p.token_emb, g.token_emb, s.m.token_emb, s.v.token_emb);
  update(p.path_emb, g.path_emb, s.m.path_emb, s.v.path_emb);
  update(p.w, g.w, s.m.w, s.v.w);
  update(p.a, g.a, s.m.a, s.v.a);
  update(p.target_emb, g.target_emb, s.m.target_emb, s.v.target_emb);
}

}  // namespace

TrainResult train(const ModelConfig& config, const std::vector<IdSample>& samples,
                  const Vocabularies& vocab) {
  config.validate();
  std::vector<const IdSample*> usable;
  for (const IdSample& s : samples) {
    if (s.target != Vocabulary::kUnk && !s.contexts.empty()) usable.push_back(&s);
  }
  TrainResult result;
  Rng init_rng(derive_seed(config.seed, "init"));
  result.params = ModelParams::random(vocab.tokens.size(), vocab.paths.size(),
                                      vocab.targets.size(), config.d_emb,
                                      config.init_scale, init_rng);
  if (config.epochs == 0 || usable.empty()) return result;

  auto [tr, val] = split_train_validation(usable.size(),
                                          config.validation_fraction, config.seed);
  result.train_indices = tr;
  result.validation_indices = val;
  std::vector<const IdSample*> val_samples;
  for (std::size_t i : val) val_samples.push_back(usable[i]);

  AdamState adam;
  zero_like(result.params, adam.m);
  zero_like(result.params, adam.v);
  ModelParams params = result.params;
  ModelParams grads;
  Rng order_rng(derive_seed(config.seed, "order"));
  Rng dropout_rng(derive_seed(config.seed, "dropout"));
  double best_f1 = -1;
  int since_best = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<std::size_t> order = tr;
    order_rng.shuffle(order);
    double loss_sum = 0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      std::vector<const IdSample*> batch;
      for (std::size_t i = start; i < end; ++i) batch.push_back(usable[order[i]]);
      loss_sum += loss_and_grads(params, batch, grads,
                                 config.dropout ? &dropout_rng : nullptr,
                                 config.dropout_rate);
      adam_update(params, grads, adam, config);
      ++batches;
    }
    EpochMetrics m = validate_epoch(params, val_samples, vocab.targets);
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(batches);
    result.history.push_back(m);
    if (m.validation_f1 > best_f1) {
      best_f1 = m.validation_f1;
      result.best_epoch = epoch;
      result.params = params;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  return result;
}

Vector embed_method(const ModelParams& params, const IdSample& sample) {
  return run_forward(params, sample, nullptr, 0.0).v;
}

std::vector<std::pair<std::string, double>> predict_name(
    const ModelParams& params, const IdSample& sample, int k,
    const Vocabulary& targets) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const Vector probs = softmax(run_forward(params, sample, nullptr, 0.0).scores);
  std::vector<std::int32_t> ids(static_cast<std::size_t>(probs.size()));
  std::iota(ids.begin(), ids.end(), 0);
  const auto top = std::min<std::size_t>(static_cast<std::size_t>(k), ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<long>(top), ids.end(),
                    [&](std::int32_t a, std::int32_t b) {
                      return probs[a] > probs[b] || (probs[a] == probs[b] && a < b);
                    });
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < top; ++i) out.emplace_back(targets.at(ids[i]), probs[ids[i]]);
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kVersion);
  const ModelConfig& c = ckpt.config;
  w.i64(c.d_emb);
  w.i64(c.max_contexts);
  w.f64(c.learning_rate);
  w.f64(c.beta1);
  w.f64(c.beta2);
  w.f64(c.epsilon);
  w.i64(c.batch_size);
  w.i64(c.epochs);
  w.i64(c.patience);
  w.f64(c.validation_fraction);
  w.u32(c.dropout ? 1 : 0);
  w.f64(c.dropout_rate);
  w.f64(c.init_scale);
  w.u64(c.seed);
  w.i64(ckpt.limits.max_length);
  w.i64(ckpt.limits.max_width);
  w.i64(ckpt.limits.max_contexts);
  w.str(ckpt.obfuscation);
  w.i64(ckpt.vocab.min_count);
  write_vocab(w, ckpt.vocab.tokens);
  write_vocab(w, ckpt.vocab.paths);
  write_vocab(w, ckpt.vocab.targets);
  ckpt.params.for_each([&](const auto& t) { w.tensor(t); });
  write_text_file(path, w.data());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  Reader r(read_text_file(path));
  if (r.raw(sizeof kMagic) != std::string(kMagic, sizeof kMagic)) {
    throw IoError("not a checkpoint: " + path.string());
  }
  const std::uint32_t version = r.u32();
  if (version != kVersion) {
    throw IoError("unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ckpt;
  ModelConfig& c = ckpt.config;
  c.d_emb = static_cast<int>(r.i64());
  c.max_contexts = static_cast<int>(r.i64());
  c.learning_rate = r.f64();
  c.beta1 = r.f64();
  c.beta2 = r.f64();
  c.epsilon = r.f64();
  c.batch_size = static_cast<int>(r.i64());
  c.epochs = static_cast<int>(r.i64());
  c.patience = static_cast<int>(r.i64());
  c.validation_fraction = r.f64();
  c.dropout = r.u32() != 0;
  c.dropout_rate = r.f64();
  c.init_scale = r.f64();
  c.seed = r.u64();
  ckpt.limits.max_length = static_cast<int>(r.i64());
  ckpt.limits.max_width = static_cast<int>(r.i64());
  ckpt.limits.max_contexts = static_cast<int>(r.i64());
  ckpt.obfuscation = r.str();
  ckpt.vocab.min_count = static_cast<int>(r.i64());
  ckpt.vocab.tokens = read_vocab(r);
  ckpt.vocab.paths = read_vocab(r);
  ckpt.vocab.targets = read_vocab(r);
  ckpt.params.for_each([&](auto& t) { r.tensor(t); });
  if (!r.done()) throw IoError("trailing bytes in checkpoint: " + path.string());
  const ModelParams& p = ckpt.params;
  const int d = c.d_emb;
  if (p.token_emb.rows() != ckpt.vocab.tokens.size() || p.token_emb.cols() != d ||
      p.path_emb.rows() != ckpt.vocab.paths.size() || p.path_emb.cols() != d ||
      p.w.rows() != 3 * d || p.w.cols() != 3 * d || p.a.size() != 3 * d ||
      p.target_emb.rows() != ckpt.vocab.targets.size() ||
      p.target_emb.cols() != 3 * d) {
    throw IoError("checkpoint tensor shapes do not match its config");
  }
  return ckpt;
}

std::string checkpoint_hash(const std::filesystem::path& path) {
  return hex64(fnv1a64(read_text_file(path)));
}

}  // namespace codevec
