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

#ifndef FCV_FUSION_CLASSIFIER_HPP_
#define FCV_FUSION_CLASSIFIER_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fcv/fusion/fusion.hpp"
#include "fcv/pipeline/grid_tensor.hpp"

// Small softmax-regression classifier over pooled stream tensors. It stands
// in for the per-stream CNNs so the two-stream pipeline can run end to end.
namespace fcv::fusion {

using Features = std::vector<double>;

enum class Pooling {
  kChannelMean,     // frequency stream: per-band global average
  kChannelMeanVar,  // temporal stream: per-channel mean and variance
};

Features pool_features(const pipeline::GridTensor& t, Pooling pooling);

struct ToyClassifier {
  int classes = 0;
  int dim = 0;
  std::vector<double> weights;  // classes x dim, row-major
  std::vector<double> bias;     // classes

  ToyClassifier() = default;
  ToyClassifier(int c, int d)
      : classes(c), dim(d), weights(static_cast<std::size_t>(c) * d, 0.0), bias(c, 0.0) {}

  // Raw class scores W x + b. Throws a parameter error on a dim mismatch.
  ScoreVector predict(std::span<const double> x) const;
  std::vector<ScoreVector> predict_batch(const std::vector<Features>& xs) const;

  bool operator==(const ToyClassifier&) const = default;
};

// Mean softmax cross-entropy and its gradient with respect to weights and
// bias (same layout as the classifier).
struct LossGradient {
  double loss = 0.0;
  std::vector<double> d_weights;
  std::vector<double> d_bias;
};
LossGradient loss_and_gradient(const ToyClassifier& clf, const std::vector<Features>& xs,
                               std::span<const int> labels);

struct TrainConfig {
  double lr = 0.1;
  int epochs = 100;
  int batch = 32;  // 0 or >= sample count: full batch
  std::vector<int> milestones;  // lr /= 10 when reaching each epoch
  std::uint64_t seed = 0;
  bool standardize = true;  // z-score features; folded into the weights
};

struct TrainLog {
  std::vector<double> epoch_loss;  // full-set loss after each epoch
  std::vector<double> epoch_lr;
};

// Plain minibatch SGD from zero weights. Needs at least two distinct labels
// in [0, classes). Trained parameters are rounded to float precision so a
// checkpoint round trip is exact.
ToyClassifier train_toy(const std::vector<Features>& xs, std::span<const int> labels, int classes,
                        const TrainConfig& cfg, TrainLog* log = nullptr);

double accuracy(const ToyClassifier& clf, const std::vector<Features>& xs,
                std::span<const int> labels);

// Checkpoint: "FCVC" | version u8 | classes u32 | dim u32 (big-endian) |
// weights then bias, float32 little-endian.
std::vector<std::uint8_t> serialize(const ToyClassifier& clf);
ToyClassifier deserialize_classifier(std::span<const std::uint8_t> bytes);
void save_checkpoint(const std::filesystem::path& path, const ToyClassifier& clf);
ToyClassifier load_checkpoint(const std::filesystem::path& path);

}  // namespace fcv::fusion

#endif  // FCV_FUSION_CLASSIFIER_HPP_
