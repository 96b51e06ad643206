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

#ifndef FCV_CODEC_PICTURE_HPP_
#define FCV_CODEC_PICTURE_HPP_

#include <cstdint>
#include <vector>

namespace fcv::codec {

struct Plane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // row-major, stride == width

  Plane() = default;
  Plane(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }
  const std::uint8_t* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }

  bool operator==(const Plane&) const = default;
};

// YCbCr 4:2:0 picture: chroma planes are half size in both directions.
struct Picture {
  Plane y, cb, cr;

  Picture() = default;
  Picture(int width, int height)
      : y(width, height), cb(width / 2, height / 2, 128), cr(width / 2, height / 2, 128) {}

  int width() const { return y.width; }
  int height() const { return y.height; }
  const Plane& plane(int c) const { return c == 0 ? y : (c == 1 ? cb : cr); }
  Plane& plane(int c) { return c == 0 ? y : (c == 1 ? cb : cr); }

  bool operator==(const Picture&) const = default;
};

struct RawVideo {
  int width = 0;   // multiple of 16
  int height = 0;  // multiple of 16
  int fps = 25;
  std::vector<Picture> frames;

  bool operator==(const RawVideo&) const = default;
};

// Throws a parameter error unless dims are positive multiples of 16 that fit
// the bitstream header and every frame matches them.
void validate(const RawVideo& video);

double mse(const Plane& a, const Plane& b);
// Peak 255, over all three planes weighted by sample count. Identical
// inputs give +infinity.
double psnr(const Picture& a, const Picture& b);
double psnr(const RawVideo& a, const RawVideo& b);
int max_abs_diff(const Picture& a, const Picture& b);

}  // namespace fcv::codec

#endif  // FCV_CODEC_PICTURE_HPP_
