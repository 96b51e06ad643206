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

#ifndef FCV_APP_E2E_HPP_
#define FCV_APP_E2E_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fcv/fusion/classifier.hpp"
#include "fcv/fusion/fusion.hpp"
#include "fcv/pipeline/extract.hpp"

// Two-stream toy run over a labeled fixture directory: extract, select
// bands, augment, train one classifier per stream, score test videos with
// all ten views of every sampled frame, then fuse.
namespace fcv::app {

struct E2eConfig {
  int fbs_k = 16;
  // Fixture-sized crops: 64x64 videos give an 8x8 block grid and a 64x64
  // motion grid.
  int freq_target = 6;
  int temp_target = 56;
  int train_rounds = 4;  // augmented passes over each training video
  fusion::TrainConfig freq_train{0.1, 100, 32, {60, 85}, 1, true};
  fusion::TrainConfig temp_train{0.1, 100, 32, {60, 85}, 2, true};
  fusion::FusionWeights weights;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct Models {
  int fbs_k = 16;
  pipeline::BandStats stats;
  fusion::ToyClassifier freq;
  fusion::ToyClassifier temp;
};

struct TrainLogs {
  fusion::TrainLog freq;
  fusion::TrainLog temp;
};

// Trains on the "train" split. Config error if labels.csv is missing, a
// video file is missing, or the split has fewer than two classes.
Models train_models(const std::filesystem::path& dataset, const E2eConfig& cfg, TrainLogs* logs = nullptr);

// <dir>/freq.fcvc, temp.fcvc and band_stats.json.
void save_models(const std::filesystem::path& dir, const Models& models);
Models load_models(const std::filesystem::path& dir);

struct VideoResult {
  std::string name;
  int label = 0;
  std::string variant;
  fusion::ScoreVector freq;
  fusion::ScoreVector temp;
  fusion::ScoreVector fused;
  std::size_t freq_tensors = 0;
  std::size_t temp_tensors = 0;
  double freq_seconds = 0.0;
  double temp_seconds = 0.0;
};

struct StreamMetrics {
  double accuracy = 0.0;
  double ms_per_video = 0.0;
  std::size_t min_tensors = 0;  // per video
  std::size_t max_tensors = 0;
};

struct E2eMetrics {
  std::size_t train_videos = 0;
  std::size_t test_videos = 0;
  StreamMetrics freq;
  StreamMetrics temp;
  StreamMetrics fused;
  std::vector<VideoResult> videos;
};

// Scores the "test" split with test-mode extraction.
E2eMetrics evaluate_models(const std::filesystem::path& dataset, const Models& models, const E2eConfig& cfg);

E2eMetrics run_e2e(const std::filesystem::path& dataset, const E2eConfig& cfg, TrainLogs* logs = nullptr);

inline constexpr const char* kMetricsCsvHeader =
    "schema,stream,train_videos,test_videos,accuracy,ms_per_video,tensors_per_video";
inline constexpr const char* kPredictionsCsvHeader = "video,label,variant,pred_freq,pred_temp,pred_fused";
std::string metrics_csv(const E2eMetrics& m);
std::string predictions_csv(const E2eMetrics& m);
// Accuracy against per-video inference time, one point per stream.
std::string metrics_svg(const E2eMetrics& m);

}  // namespace fcv::app

#endif  // FCV_APP_E2E_HPP_
