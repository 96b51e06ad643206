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

#ifndef FCV_PIPELINE_GRID_TENSOR_HPP_
#define FCV_PIPELINE_GRID_TENSOR_HPP_

#include <cstdint>
#include <vector>

#include "fcv/codec/motion.hpp"
#include "fcv/partial/partial_decode.hpp"

namespace fcv::pipeline {

// Dense (height, width, channels) float tensor, row-major. Grid units are
// blocks for the frequency stream and pixels for the temporal stream.
struct GridTensor {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;

  GridTensor() = default;
  GridTensor(int h, int w, int c, float fill = 0.0f)
      : height(h), width(w), channels(c), data(static_cast<std::size_t>(h) * w * c, fill) {}

  std::size_t index(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  float& at(int y, int x, int c) { return data[index(y, x, c)]; }
  float at(int y, int x, int c) const { return data[index(y, x, c)]; }

  bool operator==(const GridTensor&) const = default;
};

// Coefficient levels as floats; channel layout is kept (channel-major bands).
GridTensor to_grid(const partial::CoeffTensor& t);

// Window copy; must lie inside the source.
GridTensor crop(const GridTensor& t, int y, int x, int h, int w);

// Bilinear resize with half-pixel centers and edge clamping, per channel.
// Same-size resize is an exact copy.
GridTensor resize_bilinear(const GridTensor& t, int h, int w);

// Spatial mirror: column x moves to width - 1 - x; values untouched.
GridTensor mirror_columns(const GridTensor& t);

// Replicates each macroblock's vector over its 16x16 footprint into a
// (dx, dy) pixel grid, then resizes to (h, w). Intra macroblocks are (0, 0).
GridTensor rasterize_mv(const codec::MvField& field, int h, int w);
// Native resolution: (16 * mb_rows, 16 * mb_cols).
GridTensor rasterize_mv(const codec::MvField& field);

}  // namespace fcv::pipeline

#endif  // FCV_PIPELINE_GRID_TENSOR_HPP_
