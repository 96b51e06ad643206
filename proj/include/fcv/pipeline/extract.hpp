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

#ifndef FCV_PIPELINE_EXTRACT_HPP_
#define FCV_PIPELINE_EXTRACT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcv/partial/partial_decode.hpp"
#include "fcv/pipeline/augment.hpp"
#include "fcv/pipeline/grid_tensor.hpp"
#include "fcv/pipeline/sampling.hpp"

// Stream bytes -> network-ready tensors for one video and one stream:
// sampling, partial decode, FBS, flips/crops, normalization.
namespace fcv::pipeline {

inline constexpr int kTrainFrames = 3;
inline constexpr int kTestFrames = 25;
inline constexpr int kFrequencyTarget = 28;   // blocks
inline constexpr int kTemporalTarget = 224;   // pixels

// Per-channel, per-band statistics of quantized levels for standardizing the
// frequency stream: index c * 64 + band.
struct BandStats {
  int channels = 3;
  std::vector<double> mean = std::vector<double>(192, 0.0);
  std::vector<double> stddev = std::vector<double>(192, 1.0);

  bool operator==(const BandStats&) const = default;
};

BandStats compute_band_stats(const std::vector<partial::CoeffTensor>& tensors);
std::string band_stats_json(const BandStats& stats);
// Throws kConfig on malformed input.
BandStats parse_band_stats(const std::string& json);
BandStats load_band_stats(const std::filesystem::path& path);

// (v - mean) / stddev per band on a grid holding `bands` bands per channel.
void normalize_frequency(GridTensor& t, const BandStats& stats, int bands);
// Motion grids are scaled by 1 / search_range.
void normalize_temporal(GridTensor& t, int search_range);

struct ExtractConfig {
  StreamKind kind = StreamKind::kFrequency;
  SampleMode mode = SampleMode::kTest;
  int n_frames = 0;  // 0: 3 for train, 25 for test
  int fbs_k = 64;
  int target_h = 0;  // 0: 28 blocks (frequency) or 224 pixels (temporal)
  int target_w = 0;
  // Temporal grids are resized to this before cropping (0: native size).
  int resize_h = 0;
  int resize_w = 0;
  std::vector<double> scales{kCropScales.begin(), kCropScales.end()};
  double flip_prob = 0.5;
  bool negate_dx = false;
  std::uint64_t seed = 0;
  int search_range = 8;
  std::optional<BandStats> stats;  // none: no frequency standardization
  bool normalize = true;

  int frames() const;
  int height() const;
  int width() const;
};

struct ExtractResult {
  std::vector<GridTensor> tensors;
  std::vector<std::uint32_t> frame_indices;  // source frame of each tensor
};

// Train: one jittered (and maybe flipped) view per sampled frame. Test: ten
// views (five crops, each with its flip) per sampled frame.
ExtractResult extract_tensors(std::span<const std::uint8_t> stream, const ExtractConfig& cfg);
ExtractResult extract_tensors(std::span<const std::uint8_t> stream,
                              const partial::StreamInfo& info, const ExtractConfig& cfg);

}  // namespace fcv::pipeline

#endif  // FCV_PIPELINE_EXTRACT_HPP_
