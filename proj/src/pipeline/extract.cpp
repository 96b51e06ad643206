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

#include "fcv/pipeline/extract.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "fcv/error.hpp"
#include "fcv/fbs/fbs.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/rng.hpp"

namespace fcv::pipeline {
namespace {

// Bands whose spread is below this are only centered, not scaled.
constexpr double kMinStddev = 1e-6;

}  // namespace

BandStats compute_band_stats(const std::vector<partial::CoeffTensor>& tensors) {
  if (tensors.empty()) throw_parameter("no tensors to compute band statistics from");
  const int channels = tensors.front().channels;
  const std::size_t depth = static_cast<std::size_t>(channels) * 64;
  std::vector<double> sum(depth, 0.0);
  std::vector<double> sq(depth, 0.0);
  std::size_t cells = 0;
  for (const auto& t : tensors) {
    if (t.channels != channels || t.bands != 64) {
      throw_parameter("band statistics need full 64-band tensors of one channel count");
    }
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      const double v = t.values[i];
      sum[i % depth] += v;
      sq[i % depth] += v * v;
    }
    cells += t.values.size() / depth;
  }
  BandStats stats;
  stats.channels = channels;
  stats.mean.assign(depth, 0.0);
  stats.stddev.assign(depth, 1.0);
  for (std::size_t i = 0; i < depth; ++i) {
    const double mean = sum[i] / static_cast<double>(cells);
    const double var = std::max(0.0, sq[i] / static_cast<double>(cells) - mean * mean);
    stats.mean[i] = mean;
    stats.stddev[i] = std::sqrt(var) > kMinStddev ? std::sqrt(var) : 1.0;
  }
  return stats;
}

std::string band_stats_json(const BandStats& stats) {
  nlohmann::json j;
  j["channels"] = stats.channels;
  j["bands"] = 64;
  j["mean"] = stats.mean;
  j["stddev"] = stats.stddev;
  return j.dump(1);
}

BandStats parse_band_stats(const std::string& text) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::kConfig, "band stats: not a JSON object");
  try {
    BandStats stats;
    stats.channels = j.at("channels").get<int>();
    if (j.at("bands").get<int>() != 64) throw Error(ErrorKind::kConfig, "band stats: bands must be 64");
    stats.mean = j.at("mean").get<std::vector<double>>();
    stats.stddev = j.at("stddev").get<std::vector<double>>();
    const auto depth = static_cast<std::size_t>(stats.channels) * 64;
    if (stats.channels < 1 || stats.mean.size() != depth || stats.stddev.size() != depth) {
      throw Error(ErrorKind::kConfig, "band stats: mean/stddev must hold channels * 64 values");
    }
    for (double s : stats.stddev) {
      if (!(s > 0.0)) throw Error(ErrorKind::kConfig, "band stats: stddev must be positive");
    }
    return stats;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("band stats: ") + e.what());
  }
}

BandStats load_band_stats(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_band_stats(std::string(bytes.begin(), bytes.end()));
}

void normalize_frequency(GridTensor& t, const BandStats& stats, int bands) {
  if (bands < 1 || bands > 64 || t.channels != stats.channels * bands) {
    throw_parameter("grid channels do not match the band statistics");
  }
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    const int ch = static_cast<int>(i % static_cast<std::size_t>(t.channels));
    const std::size_t s = static_cast<std::size_t>(ch / bands) * 64 + ch % bands;
    t.data[i] = static_cast<float>((t.data[i] - stats.mean[s]) / stats.stddev[s]);
  }
}

void normalize_temporal(GridTensor& t, int search_range) {
  if (search_range < 1) return;
  const float scale = 1.0f / static_cast<float>(search_range);
  for (float& v : t.data) v *= scale;
}

int ExtractConfig::frames() const {
  if (n_frames > 0) return n_frames;
  return mode == SampleMode::kTrain ? kTrainFrames : kTestFrames;
}

int ExtractConfig::height() const {
  if (target_h > 0) return target_h;
  return kind == StreamKind::kFrequency ? kFrequencyTarget : kTemporalTarget;
}

int ExtractConfig::width() const {
  if (target_w > 0) return target_w;
  return kind == StreamKind::kFrequency ? kFrequencyTarget : kTemporalTarget;
}

ExtractResult extract_tensors(std::span<const std::uint8_t> stream, const ExtractConfig& cfg) {
  return extract_tensors(stream, partial::parse_headers(stream), cfg);
}

ExtractResult extract_tensors(std::span<const std::uint8_t> stream,
                              const partial::StreamInfo& info, const ExtractConfig& cfg) {
  const bool freq = cfg.kind == StreamKind::kFrequency;
  const int k = freq ? cfg.fbs_k : 64;
  const FlipSpec flip{cfg.kind, k, cfg.negate_dx};
  const int th = cfg.height();
  const int tw = cfg.width();
  if (freq && (k < 1 || k > 64)) throw_parameter("fbs k must be in 1..64");

  partial::ExtractOptions opts;
  opts.want_dct = freq;
  opts.want_mv = !freq;

  auto finish = [&](GridTensor& t) {
    if (!cfg.normalize) return;
    if (freq && cfg.stats) normalize_frequency(t, *cfg.stats, k);
    if (!freq) normalize_temporal(t, cfg.search_range);
  };

  ExtractResult out;
  const auto indices = uniform_sample(info, cfg.frames(), cfg.kind, cfg.mode, cfg.seed);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const partial::FrameFeatures f = partial::extract_frame(stream, info, indices[i], opts);
    Rng rng(mix_seed(cfg.seed, i));
    const bool flipped = cfg.mode == SampleMode::kTrain && rng.bernoulli(cfg.flip_prob);

    GridTensor grid;
    if (freq) {
      // Flip first, on the full 64-band layout, then select bands.
      const partial::CoeffTensor full = flipped ? hflip_dct(*f.dct) : *f.dct;
      grid = to_grid(fbs::select_bands(full, {k}));
    } else {
      grid = rasterize_mv(*f.mv_field);
      if (cfg.resize_h > 0 && cfg.resize_w > 0) grid = resize_bilinear(grid, cfg.resize_h, cfg.resize_w);
      if (flipped) grid = hflip_mv(grid, cfg.negate_dx);
    }

    if (cfg.mode == SampleMode::kTrain) {
      GridTensor view = crop_jitter(grid, cfg.scales, th, tw, rng);
      finish(view);
      out.tensors.push_back(std::move(view));
      out.frame_indices.push_back(indices[i]);
    } else {
      for (GridTensor& view : test_expand(grid, th, tw, flip)) {
        finish(view);
        out.tensors.push_back(std::move(view));
        out.frame_indices.push_back(indices[i]);
      }
    }
  }
  return out;
}

}  // namespace fcv::pipeline
