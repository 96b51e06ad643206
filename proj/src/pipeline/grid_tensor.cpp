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

#include "fcv/pipeline/grid_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcv/error.hpp"

namespace fcv::pipeline {
namespace {

struct Tap {
  int i0;
  int i1;
  double f;  // weight of i1
};

std::vector<Tap> taps(int src, int dst) {
  std::vector<Tap> out(static_cast<std::size_t>(dst));
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double s = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
    const int i0 = static_cast<int>(s);
    out[i] = {i0, std::min(i0 + 1, src - 1), s - i0};
  }
  return out;
}

}  // namespace

GridTensor to_grid(const partial::CoeffTensor& t) {
  GridTensor g(t.h_blocks, t.w_blocks, t.depth());
  std::transform(t.values.begin(), t.values.end(), g.data.begin(),
                 [](std::int32_t v) { return static_cast<float>(v); });
  return g;
}

GridTensor crop(const GridTensor& t, int y, int x, int h, int w) {
  if (y < 0 || x < 0 || h < 1 || w < 1 || y + h > t.height || x + w > t.width) {
    throw_parameter("crop window " + std::to_string(h) + "x" + std::to_string(w) + " at (" +
                    std::to_string(y) + "," + std::to_string(x) + ") leaves a " +
                    std::to_string(t.height) + "x" + std::to_string(t.width) + " grid");
  }
  GridTensor out(h, w, t.channels);
  const std::size_t row = static_cast<std::size_t>(w) * t.channels;
  for (int r = 0; r < h; ++r) {
    const auto* src = &t.data[t.index(y + r, x, 0)];
    std::copy(src, src + row, &out.data[out.index(r, 0, 0)]);
  }
  return out;
}

GridTensor resize_bilinear(const GridTensor& t, int h, int w) {
  if (h < 1 || w < 1) throw_parameter("resize target must be positive");
  if (t.height < 1 || t.width < 1) throw_parameter("cannot resize an empty grid");
  if (h == t.height && w == t.width) return t;
  const auto ty = taps(t.height, h);
  const auto tx = taps(t.width, w);
  GridTensor out(h, w, t.channels);
  for (int y = 0; y < h; ++y) {
    const Tap& a = ty[y];
    for (int x = 0; x < w; ++x) {
      const Tap& b = tx[x];
      for (int c = 0; c < t.channels; ++c) {
        const double top = t.at(a.i0, b.i0, c) * (1.0 - b.f) + t.at(a.i0, b.i1, c) * b.f;
        const double bot = t.at(a.i1, b.i0, c) * (1.0 - b.f) + t.at(a.i1, b.i1, c) * b.f;
        out.at(y, x, c) = static_cast<float>(top * (1.0 - a.f) + bot * a.f);
      }
    }
  }
  return out;
}

GridTensor mirror_columns(const GridTensor& t) {
  GridTensor out(t.height, t.width, t.channels);
  for (int y = 0; y < t.height; ++y) {
    for (int x = 0; x < t.width; ++x) {
      const auto* src = &t.data[t.index(y, x, 0)];
      std::copy(src, src + t.channels, &out.data[out.index(y, t.width - 1 - x, 0)]);
    }
  }
  return out;
}

GridTensor rasterize_mv(const codec::MvField& field) {
  if (field.size() == 0) throw_parameter("cannot rasterize an empty motion field");
  GridTensor g(field.mb_rows * 16, field.mb_cols * 16, 2);
  for (int r = 0; r < field.mb_rows; ++r) {
    for (int c = 0; c < field.mb_cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * field.mb_cols + c;
      const codec::MotionVector mv = field.intra[i] ? codec::MotionVector{} : field.mv[i];
      for (int y = r * 16; y < r * 16 + 16; ++y) {
        for (int x = c * 16; x < c * 16 + 16; ++x) {
          g.at(y, x, 0) = static_cast<float>(mv.dx);
          g.at(y, x, 1) = static_cast<float>(mv.dy);
        }
      }
    }
  }
  return g;
}

GridTensor rasterize_mv(const codec::MvField& field, int h, int w) {
  return resize_bilinear(rasterize_mv(field), h, w);
}

}  // namespace fcv::pipeline
