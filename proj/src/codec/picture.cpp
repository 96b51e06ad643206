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

#include "fcv/codec/picture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "fcv/error.hpp"

namespace fcv::codec {
namespace {

double squared_error(const Plane& a, const Plane& b) {
  if (a.width != b.width || a.height != b.height) throw_parameter("plane size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    sum += d * d;
  }
  return sum;
}

double to_psnr(double sq, double samples) {
  if (sq == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / (sq / samples));
}

}  // namespace

void validate(const RawVideo& video) {
  if (video.width <= 0 || video.height <= 0 || video.width % 16 != 0 || video.height % 16 != 0) {
    throw_parameter("frame dimensions " + std::to_string(video.width) + "x" +
                    std::to_string(video.height) + " are not positive multiples of 16");
  }
  if (video.width > 65520 || video.height > 65520) throw_parameter("frame dimensions too large");
  if (video.fps < 1 || video.fps > 255) throw_parameter("fps must be in 1..255");
  for (std::size_t i = 0; i < video.frames.size(); ++i) {
    const Picture& p = video.frames[i];
    if (p.y.width != video.width || p.y.height != video.height ||
        p.cb.width != video.width / 2 || p.cb.height != video.height / 2 ||
        p.cr.width != video.width / 2 || p.cr.height != video.height / 2) {
      throw_parameter("frame " + std::to_string(i) + " does not match the video dimensions");
    }
  }
}

double mse(const Plane& a, const Plane& b) {
  return squared_error(a, b) / static_cast<double>(a.data.size());
}

double psnr(const Picture& a, const Picture& b) {
  double sq = 0.0;
  double n = 0.0;
  for (int c = 0; c < 3; ++c) {
    sq += squared_error(a.plane(c), b.plane(c));
    n += static_cast<double>(a.plane(c).data.size());
  }
  return to_psnr(sq, n);
}

double psnr(const RawVideo& a, const RawVideo& b) {
  if (a.frames.size() != b.frames.size()) throw_parameter("frame count mismatch");
  double sq = 0.0;
  double n = 0.0;
  for (std::size_t f = 0; f < a.frames.size(); ++f) {
    for (int c = 0; c < 3; ++c) {
      sq += squared_error(a.frames[f].plane(c), b.frames[f].plane(c));
      n += static_cast<double>(a.frames[f].plane(c).data.size());
    }
  }
  return to_psnr(sq, n);
}

int max_abs_diff(const Picture& a, const Picture& b) {
  int worst = 0;
  for (int c = 0; c < 3; ++c) {
    const Plane& pa = a.plane(c);
    const Plane& pb = b.plane(c);
    if (pa.data.size() != pb.data.size()) throw_parameter("plane size mismatch");
    for (std::size_t i = 0; i < pa.data.size(); ++i) {
      worst = std::max(worst, std::abs(int{pa.data[i]} - int{pb.data[i]}));
    }
  }
  return worst;
}

}  // namespace fcv::codec
