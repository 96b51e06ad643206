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

#include "fcv/pipeline/augment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcv/codec/quant.hpp"
#include "fcv/error.hpp"

namespace fcv::pipeline {

partial::CoeffTensor hflip_dct(const partial::CoeffTensor& t) {
  partial::CoeffTensor out(t.h_blocks, t.w_blocks, t.channels, t.bands);
  for (int by = 0; by < t.h_blocks; ++by) {
    for (int bx = 0; bx < t.w_blocks; ++bx) {
      for (int c = 0; c < t.channels; ++c) {
        for (int b = 0; b < t.bands; ++b) {
          const std::int32_t v = t.at(by, bx, c, b);
          out.at(by, t.w_blocks - 1 - bx, c, b) = codec::zigzag_col(b) % 2 ? -v : v;
        }
      }
    }
  }
  return out;
}

GridTensor hflip_dct(const GridTensor& t, int bands) {
  if (bands < 1 || bands > 64 || t.channels % bands != 0) {
    throw_parameter("grid of " + std::to_string(t.channels) + " channels does not hold " +
                    std::to_string(bands) + "-band coefficient channels");
  }
  GridTensor out = mirror_columns(t);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const int band = static_cast<int>(i % static_cast<std::size_t>(t.channels)) % bands;
    if (codec::zigzag_col(band) % 2) out.data[i] = -out.data[i];
  }
  return out;
}

GridTensor hflip_mv(const GridTensor& t, bool negate_dx) {
  if (t.channels != 2) throw_parameter("motion grid must have 2 channels");
  GridTensor out = mirror_columns(t);
  if (negate_dx) {
    for (std::size_t i = 0; i < out.data.size(); i += 2) out.data[i] = -out.data[i];
  }
  return out;
}

GridTensor hflip(const GridTensor& t, const FlipSpec& spec) {
  return spec.kind == StreamKind::kFrequency ? hflip_dct(t, spec.bands)
                                             : hflip_mv(t, spec.negate_dx);
}

GridTensor crop_jitter(const GridTensor& t, std::span<const double> scales, int target_h,
                       int target_w, Rng& rng, CropWindow* window) {
  if (scales.empty()) throw_parameter("no crop scales given");
  if (target_h < 1 || target_w < 1) throw_parameter("crop target must be positive");
  auto side = [](double s, int target) { return static_cast<int>(std::lround(s * target)); };
  double smallest = scales[0];
  for (double s : scales) {
    if (!(s > 0.0 && s <= 1.0)) throw_parameter("crop scales must be in (0, 1]");
    smallest = std::min(smallest, s);
  }
  if (t.height < side(smallest, target_h) || t.width < side(smallest, target_w)) {
    throw_parameter("source grid " + std::to_string(t.height) + "x" + std::to_string(t.width) +
                    " is smaller than the smallest crop");
  }
  CropWindow win;
  win.scale = scales[rng.below(scales.size())];
  win.h = std::clamp(side(win.scale, target_h), 1, t.height);
  win.w = std::clamp(side(win.scale, target_w), 1, t.width);
  win.y = rng.between(0, t.height - win.h);
  win.x = rng.between(0, t.width - win.w);
  if (window != nullptr) *window = win;
  return resize_bilinear(crop(t, win.y, win.x, win.h, win.w), target_h, target_w);
}

GridTensor crop_jitter(const GridTensor& t, std::span<const double> scales, int target_h,
                       int target_w, std::uint64_t seed, CropWindow* window) {
  Rng rng(seed);
  return crop_jitter(t, scales, target_h, target_w, rng, window);
}

std::vector<GridTensor> test_expand(const GridTensor& t, int target_h, int target_w,
                                    const FlipSpec& flip) {
  if (target_h < 1 || target_w < 1) throw_parameter("crop target must be positive");
  if (t.height < target_h || t.width < target_w) {
    throw_parameter("source grid " + std::to_string(t.height) + "x" + std::to_string(t.width) +
                    " is smaller than the " + std::to_string(target_h) + "x" +
                    std::to_string(target_w) + " test crop");
  }
  const int dy = t.height - target_h;
  const int dx = t.width - target_w;
  const int origins[kTestCrops][2] = {{0, 0}, {0, dx}, {dy, 0}, {dy, dx}, {dy / 2, dx / 2}};
  std::vector<GridTensor> out;
  out.reserve(kTestViews);
  for (const auto& o : origins) {
    out.push_back(crop(t, o[0], o[1], target_h, target_w));
    out.push_back(hflip(out.back(), flip));
  }
  return out;
}

}  // namespace fcv::pipeline
