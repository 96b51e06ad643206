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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "fcv/fusion/classifier.hpp"
#include "fcv/fusion/fusion.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/rng.hpp"
#include "fixtures.hpp"

using namespace fcv;
using namespace fcv::fusion;
using fcv::testing::kind_of;

namespace {

struct Blobs {
  std::vector<Features> xs;
  std::vector<int> ys;
};

// Gaussian blobs around well-separated centers.
Blobs make_blobs(Rng& rng, int classes, int per_class, int dim, double spread = 0.3) {
  std::vector<Features> centers(classes, Features(dim));
  for (int c = 0; c < classes; ++c) {
    for (int d = 0; d < dim; ++d) centers[c][d] = 4.0 * rng.normal();
  }
  Blobs b;
  for (int i = 0; i < per_class * classes; ++i) {
    const int c = i % classes;
    Features x(dim);
    for (int d = 0; d < dim; ++d) x[d] = centers[c][d] + spread * rng.normal();
    b.xs.push_back(x);
    b.ys.push_back(c);
  }
  return b;
}

ToyClassifier random_classifier(Rng& rng, int c, int d) {
  ToyClassifier clf(c, d);
  for (double& w : clf.weights) w = rng.normal();
  for (double& w : clf.bias) w = rng.normal();
  return clf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-6, std::abs(a) + std::abs(b)); }

}  // namespace

TEST(VideoScore, Examples) {
  const std::vector<ScoreVector> one = {{0.3, -1.0, 2.0}};
  EXPECT_EQ(video_score(one), one[0]);
  const std::vector<ScoreVector> two = {{1.0, 0.0}, {0.0, 1.0}};
  EXPECT_EQ(video_score(two), (ScoreVector{0.5, 0.5}));
}

TEST(VideoScore, MatchesDirectSum) {
  Rng rng(1);
  std::vector<ScoreVector> s(250, ScoreVector(5));
  for (auto& v : s) {
    for (double& x : v) x = rng.normal();
  }
  const ScoreVector got = video_score(s);
  for (int c = 0; c < 5; ++c) {
    double sum = 0.0;
    for (const auto& v : s) sum += v[c];
    EXPECT_NEAR(got[c], sum / 250.0, 1e-12);
  }
}

TEST(VideoScore, Errors) {
  EXPECT_EQ(kind_of([] { video_score({}); }), ErrorKind::kParameter);
  const std::vector<ScoreVector> ragged = {{1.0, 2.0}, {1.0}};
  EXPECT_EQ(kind_of([&] { video_score(ragged); }), ErrorKind::kParameter);
}

TEST(LateFuse, Examples) {
  const ScoreVector f = {1.0, 3.0, -2.0};
  const ScoreVector t = {5.0, -1.0, 0.0};
  EXPECT_EQ(late_fuse(f, t, {1, 0}), f);
  EXPECT_EQ(late_fuse(f, t, {0, 1}), t);
  EXPECT_EQ(late_fuse(f, t, {1, 1}), (ScoreVector{3.0, 1.0, -1.0}));
  EXPECT_EQ(kind_of([&] { late_fuse(f, t, {0, 0}); }), ErrorKind::kParameter);
  EXPECT_EQ(kind_of([&] { late_fuse(f, t, {-1, 2}); }), ErrorKind::kParameter);
  EXPECT_EQ(kind_of([&] { late_fuse(f, {1.0}, {1, 1}); }), ErrorKind::kParameter);
  const FusionWeights d;
  EXPECT_EQ(d.freq, 2.0);
  EXPECT_EQ(d.temp, 1.0);
}

TEST(LateFuse, ArgmaxIgnoresWeightScale) {
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    ScoreVector f(4), s(4);
    for (double& x : f) x = rng.normal();
    for (double& x : s) x = rng.normal();
    const FusionWeights w{rng.uniform() + 0.01, rng.uniform()};
    const double c = 0.01 + 100.0 * rng.uniform();
    EXPECT_EQ(argmax(late_fuse(f, s, w)), argmax(late_fuse(f, s, {c * w.freq, c * w.temp})));
  }
}

TEST(LateFuse, PermutationEquivariant) {
  Rng rng(3);
  ScoreVector f(5), s(5);
  for (double& x : f) x = rng.normal();
  for (double& x : s) x = rng.normal();
  const std::vector<int> perm = {3, 0, 4, 1, 2};
  auto apply = [&](const ScoreVector& v) {
    ScoreVector o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[perm[i]];
    return o;
  };
  EXPECT_EQ(late_fuse(apply(f), apply(s), {2, 1}), apply(late_fuse(f, s, {2, 1})));
  const std::vector<ScoreVector> frames = {f, s};
  const std::vector<ScoreVector> pframes = {apply(f), apply(s)};
  EXPECT_EQ(video_score(pframes), apply(video_score(frames)));
}

TEST(Argmax, TiesGoLow) {
  EXPECT_EQ(argmax({1.0, 3.0, 3.0}), 1u);
  EXPECT_EQ(kind_of([] { argmax({}); }), ErrorKind::kParameter);
}

TEST(Classifier, ZeroWeightsScoreTheBias) {
  ToyClassifier clf(3, 4);
  clf.bias = {0.5, -1.0, 2.0};
  EXPECT_EQ(clf.predict(Features{1, 2, 3, 4}), clf.bias);
  EXPECT_EQ(kind_of([&] { clf.predict(Features{1, 2}); }), ErrorKind::kParameter);
}

TEST(Classifier, GradientMatchesFiniteDifferences) {
  Rng rng(4);
  for (int point = 0; point < 10; ++point) {
    const Blobs b = make_blobs(rng, 3, 5, 4, 1.0);
    ToyClassifier clf = random_classifier(rng, 3, 4);
    const LossGradient g = loss_and_gradient(clf, b.xs, b.ys);
    const double h = 1e-5;
    double worst = 0.0;
    auto probe = [&](double& param, double analytic) {
      const double keep = param;
      param = keep + h;
      const double up = loss_and_gradient(clf, b.xs, b.ys).loss;
      param = keep - h;
      const double down = loss_and_gradient(clf, b.xs, b.ys).loss;
      param = keep;
      worst = std::max(worst, rel_err(analytic, (up - down) / (2 * h)));
    };
    for (std::size_t i = 0; i < clf.weights.size(); ++i) probe(clf.weights[i], g.d_weights[i]);
    for (std::size_t i = 0; i < clf.bias.size(); ++i) probe(clf.bias[i], g.d_bias[i]);
    EXPECT_LE(worst, 1e-4) << "point " << point;
  }
}

TEST(Classifier, SeparableBlobsAreLearned) {
  Rng rng(5);
  for (int classes : {2, 4}) {
    const Blobs b = make_blobs(rng, classes, 60, 6);
    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.seed = 1;
    TrainLog log;
    const ToyClassifier clf = train_toy(b.xs, b.ys, classes, cfg, &log);
    EXPECT_GE(accuracy(clf, b.xs, b.ys), 0.99) << classes;
    ASSERT_EQ(log.epoch_loss.size(), 200u);
    EXPECT_LT(log.epoch_loss.back(), log.epoch_loss.front());
  }
}

TEST(Classifier, FullBatchLossDoesNotIncrease) {
  Rng rng(6);
  const Blobs b = make_blobs(rng, 2, 40, 3);
  TrainConfig cfg;
  cfg.batch = 0;
  cfg.epochs = 100;
  cfg.lr = 0.1;
  TrainLog log;
  train_toy(b.xs, b.ys, 2, cfg, &log);
  for (std::size_t e = 1; e < log.epoch_loss.size(); ++e) {
    EXPECT_LE(log.epoch_loss[e], log.epoch_loss[e - 1] + 1e-12) << "epoch " << e;
  }
}

TEST(Classifier, StepDecay) {
  Rng rng(7);
  const Blobs b = make_blobs(rng, 2, 10, 2);
  TrainConfig cfg;
  cfg.lr = 0.5;
  cfg.epochs = 10;
  cfg.milestones = {3, 7};
  TrainLog log;
  train_toy(b.xs, b.ys, 2, cfg, &log);
  ASSERT_EQ(log.epoch_lr.size(), 10u);
  EXPECT_DOUBLE_EQ(log.epoch_lr[0], 0.5);
  EXPECT_DOUBLE_EQ(log.epoch_lr[2], 0.5);
  EXPECT_DOUBLE_EQ(log.epoch_lr[3], 0.05);
  EXPECT_DOUBLE_EQ(log.epoch_lr[7], 0.005);
}

TEST(Classifier, ZeroRateLeavesParametersAlone) {
  Rng rng(8);
  const Blobs b = make_blobs(rng, 3, 10, 4);
  TrainConfig cfg;
  cfg.lr = 0.0;
  cfg.epochs = 5;
  EXPECT_EQ(train_toy(b.xs, b.ys, 3, cfg), ToyClassifier(3, 4));
}

TEST(Classifier, DeterministicUnderSeed) {
  Rng rng(9);
  const Blobs b = make_blobs(rng, 3, 20, 5);
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.batch = 7;
  cfg.seed = 42;
  EXPECT_EQ(train_toy(b.xs, b.ys, 3, cfg), train_toy(b.xs, b.ys, 3, cfg));
}

TEST(Classifier, TrainingErrors) {
  const std::vector<Features> xs = {{1.0}, {2.0}};
  const std::vector<int> same = {1, 1};
  const std::vector<int> bad = {0, 5};
  EXPECT_EQ(kind_of([&] { train_toy(xs, same, 2, {}); }), ErrorKind::kParameter);
  EXPECT_EQ(kind_of([&] { train_toy(xs, bad, 2, {}); }), ErrorKind::kParameter);
  EXPECT_EQ(kind_of([&] { train_toy(xs, std::vector<int>{0, 1}, 1, {}); }), ErrorKind::kParameter);
}

TEST(Classifier, BatchPredictMatchesSingle) {
  Rng rng(10);
  const ToyClassifier clf = random_classifier(rng, 4, 6);
  const Blobs b = make_blobs(rng, 4, 8, 6);
  const auto batch = clf.predict_batch(b.xs);
  ASSERT_EQ(batch.size(), b.xs.size());
  for (std::size_t i = 0; i < b.xs.size(); ++i) EXPECT_EQ(batch[i], clf.predict(b.xs[i]));
}

TEST(Classifier, PredictionSurvivesTensorExport) {
  Rng rng(11);
  pipeline::GridTensor g(5, 5, 6);
  for (float& v : g.data) v = static_cast<float>(rng.normal());
  const auto file = pipeline::stack({g}, pipeline::StreamKind::kFrequency, 2, "{}");
  const auto back = pipeline::unstack(pipeline::deserialize(pipeline::serialize(file)));
  const ToyClassifier clf = random_classifier(rng, 3, 6);
  EXPECT_EQ(clf.predict(pool_features(back[0], Pooling::kChannelMean)),
            clf.predict(pool_features(g, Pooling::kChannelMean)));
}

TEST(Pooling, MeanAndVariance) {
  pipeline::GridTensor g(1, 2, 2);
  g.data = {1.0f, 10.0f, 3.0f, 20.0f};
  EXPECT_EQ(pool_features(g, Pooling::kChannelMean), (Features{2.0, 15.0}));
  const Features mv = pool_features(g, Pooling::kChannelMeanVar);
  ASSERT_EQ(mv.size(), 4u);
  EXPECT_DOUBLE_EQ(mv[0], 2.0);
  EXPECT_DOUBLE_EQ(mv[1], 15.0);
  EXPECT_DOUBLE_EQ(mv[2], 1.0);
  EXPECT_DOUBLE_EQ(mv[3], 25.0);
}

TEST(Checkpoint, RoundTrip) {
  Rng rng(12);
  const Blobs b = make_blobs(rng, 3, 20, 5);
  TrainConfig cfg;
  cfg.epochs = 10;
  const ToyClassifier clf = train_toy(b.xs, b.ys, 3, cfg);
  const auto bytes = serialize(clf);
  EXPECT_EQ(bytes.size(), 4u + 1u + 8u + 4u * (15u + 3u));
  EXPECT_EQ(deserialize_classifier(bytes), clf);
  const auto dir = std::filesystem::temp_directory_path() / "fcv_ckpt_test";
  std::filesystem::create_directories(dir);
  save_checkpoint(dir / "m.fcvc", clf);
  EXPECT_EQ(load_checkpoint(dir / "m.fcvc"), clf);
  std::filesystem::remove_all(dir);
}

TEST(Checkpoint, FormatErrors) {
  const auto good = serialize(ToyClassifier(2, 3));
  auto check = [](std::vector<std::uint8_t> b) {
    EXPECT_EQ(kind_of([&] { deserialize_classifier(b); }), ErrorKind::kFormat);
  };
  auto b = good;
  b[1] = 'X';
  check(b);
  b = good;
  b[4] = 2;
  check(b);
  b = good;
  b.pop_back();
  check(b);
  b = good;
  b.push_back(1);
  check(b);
}
