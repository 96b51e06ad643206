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

#include "fcv/app/e2e.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <thread>

#include "fcv/app/svg.hpp"
#include "fcv/app/synth.hpp"
#include "fcv/error.hpp"
#include "fcv/partial/partial_decode.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/rng.hpp"

namespace fcv::app {
namespace {

using Clock = std::chrono::steady_clock;
using fusion::Features;

std::vector<LabeledVideo> split_of(const std::vector<LabeledVideo>& all, const std::string& split) {
  std::vector<LabeledVideo> out;
  for (const auto& v : all) {
    if (v.split == split) out.push_back(v);
  }
  return out;
}

std::vector<std::uint8_t> load_stream(const std::filesystem::path& dataset, const LabeledVideo& v) {
  const auto path = dataset / (v.name + ".fcv");
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::kConfig, "labeled video is missing: " + path.string());
  return pipeline::read_file(path);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results go to
// per-index slots, so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

pipeline::ExtractConfig stream_config(const E2eConfig& cfg, pipeline::StreamKind kind, pipeline::SampleMode mode,
                                      const Models* models) {
  pipeline::ExtractConfig ec;
  ec.kind = kind;
  ec.mode = mode;
  ec.fbs_k = cfg.fbs_k;
  const int side = kind == pipeline::StreamKind::kFrequency ? cfg.freq_target : cfg.temp_target;
  ec.target_h = side;
  ec.target_w = side;
  if (models && kind == pipeline::StreamKind::kFrequency) ec.stats = models->stats;
  return ec;
}

fusion::Pooling pooling_of(pipeline::StreamKind kind) {
  return kind == pipeline::StreamKind::kFrequency ? fusion::Pooling::kChannelMean : fusion::Pooling::kChannelMeanVar;
}

std::size_t correct(const std::vector<VideoResult>& vs, fusion::ScoreVector VideoResult::*s) {
  std::size_t n = 0;
  for (const auto& v : vs) {
    if (fusion::argmax(v.*s) == static_cast<std::size_t>(v.label)) ++n;
  }
  return n;
}

std::string fmt(double v, const char* f) {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

Models train_models(const std::filesystem::path& dataset, const E2eConfig& cfg, TrainLogs* logs) {
  const std::vector<LabeledVideo> train = split_of(read_labels(dataset), "train");
  std::set<int> classes;
  for (const auto& v : train) classes.insert(v.label);
  if (classes.size() < 2) throw Error(ErrorKind::kConfig, "training split needs at least two classes");
  const int n_classes = *classes.rbegin() + 1;
  if (cfg.train_rounds < 1) throw_parameter("train_rounds must be >= 1");

  std::vector<std::vector<std::uint8_t>> streams(train.size());
  parallel_for(train.size(), cfg.threads, [&](std::size_t i) { streams[i] = load_stream(dataset, train[i]); });

  // Band statistics over every training I-frame, before any augmentation.
  Models models;
  models.fbs_k = cfg.fbs_k;
  {
    std::vector<std::vector<partial::CoeffTensor>> per(train.size());
    parallel_for(train.size(), cfg.threads, [&](std::size_t i) {
      for (auto& f : partial::extract_all(streams[i], {true, false, false})) {
        if (f.dct) per[i].push_back(std::move(*f.dct));
      }
    });
    std::vector<partial::CoeffTensor> all;
    for (auto& p : per) all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    models.stats = pipeline::compute_band_stats(all);
  }

  for (auto kind : {pipeline::StreamKind::kFrequency, pipeline::StreamKind::kTemporal}) {
    const bool freq = kind == pipeline::StreamKind::kFrequency;
    std::vector<std::vector<Features>> per(train.size());
    parallel_for(train.size(), cfg.threads, [&](std::size_t i) {
      for (int r = 0; r < cfg.train_rounds; ++r) {
        pipeline::ExtractConfig ec = stream_config(cfg, kind, pipeline::SampleMode::kTrain, &models);
        ec.seed = mix_seed(cfg.seed, i * static_cast<std::uint64_t>(cfg.train_rounds) + r) + (freq ? 0 : 1);
        for (const auto& t : pipeline::extract_tensors(streams[i], ec).tensors) {
          per[i].push_back(fusion::pool_features(t, pooling_of(kind)));
        }
      }
    });
    std::vector<Features> xs;
    std::vector<int> ys;
    for (std::size_t i = 0; i < train.size(); ++i) {
      for (auto& f : per[i]) {
        xs.push_back(std::move(f));
        ys.push_back(train[i].label);
      }
    }
    const fusion::TrainConfig& tc = freq ? cfg.freq_train : cfg.temp_train;
    fusion::TrainLog* log = logs ? (freq ? &logs->freq : &logs->temp) : nullptr;
    (freq ? models.freq : models.temp) = fusion::train_toy(xs, ys, n_classes, tc, log);
  }
  return models;
}

void save_models(const std::filesystem::path& dir, const Models& models) {
  std::filesystem::create_directories(dir);
  fusion::save_checkpoint(dir / "freq.fcvc", models.freq);
  fusion::save_checkpoint(dir / "temp.fcvc", models.temp);
  const std::string js = pipeline::band_stats_json(models.stats);
  pipeline::write_file_atomic(dir / "band_stats.json", std::vector<std::uint8_t>(js.begin(), js.end()));
}

Models load_models(const std::filesystem::path& dir) {
  Models m;
  m.freq = fusion::load_checkpoint(dir / "freq.fcvc");
  m.temp = fusion::load_checkpoint(dir / "temp.fcvc");
  m.stats = pipeline::load_band_stats(dir / "band_stats.json");
  if (m.freq.dim % 3 != 0 || m.freq.dim / 3 < 1 || m.freq.dim / 3 > 64) {
    throw Error(ErrorKind::kConfig, "frequency checkpoint dim is not 3 * k");
  }
  if (m.freq.classes != m.temp.classes) throw Error(ErrorKind::kConfig, "checkpoints disagree on class count");
  m.fbs_k = m.freq.dim / 3;
  return m;
}

E2eMetrics evaluate_models(const std::filesystem::path& dataset, const Models& models, const E2eConfig& base) {
  E2eConfig cfg = base;
  cfg.fbs_k = models.fbs_k;
  const std::vector<LabeledVideo> all = read_labels(dataset);
  const std::vector<LabeledVideo> test = split_of(all, "test");
  if (test.empty()) throw Error(ErrorKind::kConfig, "labels have no test split");

  E2eMetrics m;
  m.train_videos = all.size() - test.size();
  m.test_videos = test.size();
  m.videos.resize(test.size());
  parallel_for(test.size(), cfg.threads, [&](std::size_t i) {
    VideoResult& r = m.videos[i];
    r.name = test[i].name;
    r.label = test[i].label;
    r.variant = test[i].variant;
    const std::vector<std::uint8_t> stream = load_stream(dataset, test[i]);
    const partial::StreamInfo info = partial::parse_headers(stream);
    for (auto kind : {pipeline::StreamKind::kFrequency, pipeline::StreamKind::kTemporal}) {
      const bool freq = kind == pipeline::StreamKind::kFrequency;
      const auto t0 = Clock::now();
      pipeline::ExtractConfig ec = stream_config(cfg, kind, pipeline::SampleMode::kTest, &models);
      ec.seed = cfg.seed;
      const auto tensors = pipeline::extract_tensors(stream, info, ec).tensors;
      std::vector<fusion::ScoreVector> scores;
      scores.reserve(tensors.size());
      const fusion::ToyClassifier& clf = freq ? models.freq : models.temp;
      for (const auto& t : tensors) scores.push_back(clf.predict(fusion::pool_features(t, pooling_of(kind))));
      (freq ? r.freq : r.temp) = fusion::video_score(scores);
      (freq ? r.freq_tensors : r.temp_tensors) = tensors.size();
      (freq ? r.freq_seconds : r.temp_seconds) = std::chrono::duration<double>(Clock::now() - t0).count();
    }
    r.fused = fusion::late_fuse(r.freq, r.temp, cfg.weights);
  });

  const double n = static_cast<double>(m.videos.size());
  m.freq.accuracy = static_cast<double>(correct(m.videos, &VideoResult::freq)) / n;
  m.temp.accuracy = static_cast<double>(correct(m.videos, &VideoResult::temp)) / n;
  m.fused.accuracy = static_cast<double>(correct(m.videos, &VideoResult::fused)) / n;
  double fs = 0.0;
  double ts = 0.0;
  m.freq.min_tensors = m.temp.min_tensors = SIZE_MAX;
  for (const auto& v : m.videos) {
    fs += v.freq_seconds;
    ts += v.temp_seconds;
    m.freq.min_tensors = std::min(m.freq.min_tensors, v.freq_tensors);
    m.freq.max_tensors = std::max(m.freq.max_tensors, v.freq_tensors);
    m.temp.min_tensors = std::min(m.temp.min_tensors, v.temp_tensors);
    m.temp.max_tensors = std::max(m.temp.max_tensors, v.temp_tensors);
  }
  m.freq.ms_per_video = 1e3 * fs / n;
  m.temp.ms_per_video = 1e3 * ts / n;
  m.fused.ms_per_video = m.freq.ms_per_video + m.temp.ms_per_video;
  m.fused.min_tensors = m.freq.min_tensors + m.temp.min_tensors;
  m.fused.max_tensors = m.freq.max_tensors + m.temp.max_tensors;
  return m;
}

E2eMetrics run_e2e(const std::filesystem::path& dataset, const E2eConfig& cfg, TrainLogs* logs) {
  return evaluate_models(dataset, train_models(dataset, cfg, logs), cfg);
}

std::string metrics_csv(const E2eMetrics& m) {
  std::string out = std::string(kMetricsCsvHeader) + "\n";
  auto row = [&](const char* name, const StreamMetrics& s) {
    const std::string tensors = s.min_tensors == s.max_tensors
                                    ? std::to_string(s.min_tensors)
                                    : std::to_string(s.min_tensors) + "-" + std::to_string(s.max_tensors);
    out += std::string("fcv-e2e-1,") + name + "," + std::to_string(m.train_videos) + "," +
           std::to_string(m.test_videos) + "," + fmt(s.accuracy, "%.4f") + "," + fmt(s.ms_per_video, "%.3f") +
           "," + tensors + "\n";
  };
  row("frequency", m.freq);
  row("temporal", m.temp);
  row("fused", m.fused);
  return out;
}

std::string predictions_csv(const E2eMetrics& m) {
  std::string out = std::string(kPredictionsCsvHeader) + "\n";
  for (const auto& v : m.videos) {
    out += v.name + "," + std::to_string(v.label) + "," + v.variant + "," + std::to_string(fusion::argmax(v.freq)) +
           "," + std::to_string(fusion::argmax(v.temp)) + "," + std::to_string(fusion::argmax(v.fused)) + "\n";
  }
  return out;
}

std::string metrics_svg(const E2eMetrics& m) {
  return scatter_plot("Toy accuracy vs. inference time", "ms per video (extract + score)", "accuracy",
                      {{"frequency", m.freq.ms_per_video, m.freq.accuracy},
                       {"temporal", m.temp.ms_per_video, m.temp.accuracy},
                       {"fused", m.fused.ms_per_video, m.fused.accuracy}});
}

}  // namespace fcv::app
