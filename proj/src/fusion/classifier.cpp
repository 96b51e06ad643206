// Copyright 2026 The fcv Authors
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

#include "fcv/fusion/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <string>

#include "fcv/error.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/rng.hpp"

namespace fcv::fusion {
namespace {

constexpr char kMagic[4] = {'F', 'C', 'V', 'C'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 1 + 4 + 4;

void check_dim(const ToyClassifier& clf, std::size_t n) {
  if (n != static_cast<std::size_t>(clf.dim)) {
    throw_parameter("feature length " + std::to_string(n) + " does not match classifier dim " +
                    std::to_string(clf.dim));
  }
}

void check_samples(const ToyClassifier& clf, const std::vector<Features>& xs,
                   std::span<const int> labels) {
  if (xs.size() != labels.size()) throw_parameter("feature and label counts differ");
  if (xs.empty()) throw_parameter("no samples");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_dim(clf, xs[i].size());
    if (labels[i] < 0 || labels[i] >= clf.classes) {
      throw_parameter("label " + std::to_string(labels[i]) + " out of range");
    }
  }
}

// Softmax probabilities, stable against large scores.
std::vector<double> softmax(const ScoreVector& s) {
  const double m = *std::max_element(s.begin(), s.end());
  std::vector<double> p(s.size());
  double z = 0.0;
  for (std::size_t c = 0; c < s.size(); ++c) z += (p[c] = std::exp(s[c] - m));
  for (double& v : p) v /= z;
  return p;
}

// Accumulates the summed loss/gradient over `idx` into g (not averaged).
void accumulate(const ToyClassifier& clf, const std::vector<Features>& xs, std::span<const int> labels,
                std::span<const std::size_t> idx, LossGradient& g) {
  const auto d = static_cast<std::size_t>(clf.dim);
  for (std::size_t i : idx) {
    const ScoreVector s = clf.predict(xs[i]);
    const std::vector<double> p = softmax(s);
    const auto y = static_cast<std::size_t>(labels[i]);
    g.loss += -std::log(std::max(p[y], 1e-300));
    for (std::size_t c = 0; c < p.size(); ++c) {
      const double e = p[c] - (c == y ? 1.0 : 0.0);
      g.d_bias[c] += e;
      double* row = &g.d_weights[c * d];
      for (std::size_t k = 0; k < d; ++k) row[k] += e * xs[i][k];
    }
  }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}
std::uint32_t get_u32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}
void put_f32(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(bits >> s));
}
double get_f32(const std::uint8_t* p) {
  const std::uint32_t bits = std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                             (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
  return static_cast<double>(std::bit_cast<float>(bits));
}

}  // namespace

Features pool_features(const pipeline::GridTensor& t, Pooling pooling) {
  const std::size_t cells = static_cast<std::size_t>(t.height) * t.width;
  if (cells == 0 || t.channels < 1) throw_parameter("cannot pool an empty tensor");
  std::vector<double> sum(t.channels, 0.0);
  std::vector<double> sq(t.channels, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    for (int c = 0; c < t.channels; ++c) {
      const double v = t.data[i * t.channels + c];
      sum[c] += v;
      sq[c] += v * v;
    }
  }
  Features f;
  for (int c = 0; c < t.channels; ++c) f.push_back(sum[c] / static_cast<double>(cells));
  if (pooling == Pooling::kChannelMeanVar) {
    for (int c = 0; c < t.channels; ++c) {
      const double m = f[c];
      f.push_back(std::max(0.0, sq[c] / static_cast<double>(cells) - m * m));
    }
  }
  return f;
}

ScoreVector ToyClassifier::predict(std::span<const double> x) const {
  check_dim(*this, x.size());
  ScoreVector s(bias);
  const auto d = static_cast<std::size_t>(dim);
  for (std::size_t c = 0; c < s.size(); ++c) {
    const double* row = &weights[c * d];
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) acc += row[k] * x[k];
    s[c] += acc;
  }
  return s;
}

std::vector<ScoreVector> ToyClassifier::predict_batch(const std::vector<Features>& xs) const {
  std::vector<ScoreVector> out;
  out.reserve(xs.size());
  for (const Features& x : xs) out.push_back(predict(x));
  return out;
}

LossGradient loss_and_gradient(const ToyClassifier& clf, const std::vector<Features>& xs,
                               std::span<const int> labels) {
  check_samples(clf, xs, labels);
  LossGradient g;
  g.d_weights.assign(clf.weights.size(), 0.0);
  g.d_bias.assign(clf.bias.size(), 0.0);
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  accumulate(clf, xs, labels, idx, g);
  const double n = static_cast<double>(xs.size());
  g.loss /= n;
  for (double& v : g.d_weights) v /= n;
  for (double& v : g.d_bias) v /= n;
  return g;
}

ToyClassifier train_toy(const std::vector<Features>& xs, std::span<const int> labels, int classes,
                        const TrainConfig& cfg, TrainLog* log) {
  if (classes < 2) throw_parameter("need at least two classes");
  if (xs.empty()) throw_parameter("no training samples");
  if (!(cfg.lr >= 0.0) || !std::isfinite(cfg.lr)) throw_parameter("learning rate must be >= 0");
  if (cfg.epochs < 0 || cfg.batch < 0) throw_parameter("epochs and batch must be >= 0");
  const int dim = static_cast<int>(xs.front().size());
  if (dim < 1) throw_parameter("features are empty");
  ToyClassifier clf(classes, dim);
  check_samples(clf, xs, labels);
  if (std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels.front(); })) {
    throw_parameter("training labels contain a single class");
  }

  const auto d = static_cast<std::size_t>(dim);
  std::vector<double> mean(d, 0.0);
  std::vector<double> scale(d, 1.0);
  if (cfg.standardize) {
    const double n = static_cast<double>(xs.size());
    std::vector<double> sq(d, 0.0);
    for (const Features& x : xs) {
      for (std::size_t k = 0; k < d; ++k) {
        mean[k] += x[k];
        sq[k] += x[k] * x[k];
      }
    }
    for (std::size_t k = 0; k < d; ++k) {
      mean[k] /= n;
      const double var = sq[k] / n - mean[k] * mean[k];
      scale[k] = var > 1e-12 ? 1.0 / std::sqrt(var) : 1.0;
    }
  }
  std::vector<Features> zs(xs.size(), Features(d));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) zs[i][k] = (xs[i][k] - mean[k]) * scale[k];
  }

  const std::size_t batch =
      cfg.batch == 0 ? xs.size() : std::min(xs.size(), static_cast<std::size_t>(cfg.batch));
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(cfg.seed);
  double lr = cfg.lr;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (int m : cfg.milestones) {
      if (m == epoch) lr /= 10.0;
    }
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t len = std::min(batch, order.size() - start);
      LossGradient g;
      g.d_weights.assign(clf.weights.size(), 0.0);
      g.d_bias.assign(clf.bias.size(), 0.0);
      accumulate(clf, zs, labels, std::span(order).subspan(start, len), g);
      const double step = lr / static_cast<double>(len);
      for (std::size_t j = 0; j < clf.weights.size(); ++j) clf.weights[j] -= step * g.d_weights[j];
      for (std::size_t j = 0; j < clf.bias.size(); ++j) clf.bias[j] -= step * g.d_bias[j];
    }
    if (log) {
      log->epoch_loss.push_back(loss_and_gradient(clf, zs, labels).loss);
      log->epoch_lr.push_back(lr);
    }
  }

  // Fold the standardization into the raw-feature weights.
  for (std::size_t c = 0; c < static_cast<std::size_t>(classes); ++c) {
    double shift = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      double& w = clf.weights[c * d + k];
      w *= scale[k];
      shift += w * mean[k];
    }
    clf.bias[c] -= shift;
  }
  for (double& w : clf.weights) w = static_cast<float>(w);
  for (double& b : clf.bias) b = static_cast<float>(b);
  return clf;
}

double accuracy(const ToyClassifier& clf, const std::vector<Features>& xs,
                std::span<const int> labels) {
  check_samples(clf, xs, labels);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (argmax(clf.predict(xs[i])) == static_cast<std::size_t>(labels[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(xs.size());
}

std::vector<std::uint8_t> serialize(const ToyClassifier& clf) {
  if (clf.classes < 1 || clf.dim < 1 ||
      clf.weights.size() != static_cast<std::size_t>(clf.classes) * clf.dim ||
      clf.bias.size() != static_cast<std::size_t>(clf.classes)) {
    throw_parameter("classifier shape is inconsistent");
  }
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  put_u32(out, static_cast<std::uint32_t>(clf.classes));
  put_u32(out, static_cast<std::uint32_t>(clf.dim));
  for (double w : clf.weights) put_f32(out, w);
  for (double b : clf.bias) put_f32(out, b);
  return out;
}

ToyClassifier deserialize_classifier(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw Error(ErrorKind::kFormat, "checkpoint is truncated");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw Error(ErrorKind::kFormat, "bad checkpoint magic");
  if (bytes[4] != kVersion) {
    throw Error(ErrorKind::kFormat, "unsupported checkpoint version " + std::to_string(bytes[4]));
  }
  const std::uint32_t classes = get_u32(&bytes[5]);
  const std::uint32_t dim = get_u32(&bytes[9]);
  if (classes == 0 || dim == 0 || classes > (1u << 20) || dim > (1u << 24)) {
    throw Error(ErrorKind::kFormat, "checkpoint shape is out of range");
  }
  const std::uint64_t count = std::uint64_t{classes} * dim + classes;
  if (bytes.size() != kHeaderBytes + 4 * count) {
    throw Error(ErrorKind::kFormat, "checkpoint payload length does not match its shape");
  }
  ToyClassifier clf(static_cast<int>(classes), static_cast<int>(dim));
  const std::uint8_t* p = bytes.data() + kHeaderBytes;
  for (double& w : clf.weights) {
    w = get_f32(p);
    p += 4;
  }
  for (double& b : clf.bias) {
    b = get_f32(p);
    p += 4;
  }
  return clf;
}

void save_checkpoint(const std::filesystem::path& path, const ToyClassifier& clf) {
  pipeline::write_file_atomic(path, serialize(clf));
}

ToyClassifier load_checkpoint(const std::filesystem::path& path) {
  return deserialize_classifier(pipeline::read_file(path));
}

}  // namespace fcv::fusion
