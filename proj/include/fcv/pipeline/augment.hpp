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

#ifndef FCV_PIPELINE_AUGMENT_HPP_
#define FCV_PIPELINE_AUGMENT_HPP_

#include <array>
#include <span>
#include <vector>

#include "fcv/partial/partial_decode.hpp"
#include "fcv/pipeline/grid_tensor.hpp"
#include "fcv/pipeline/sampling.hpp"
#include "fcv/rng.hpp"

namespace fcv::pipeline {

inline constexpr std::array<double, 4> kCropScales = {1.0, 0.875, 0.75, 0.66};
inline constexpr int kTestCrops = 5;
inline constexpr int kTestViews = 2 * kTestCrops;

// Horizontal flip in the DCT domain: block columns reversed and, inside each
// block, bands with an odd horizontal frequency negated. Equal to flipping
// the decoded picture because the basis satisfies c_v(7 - x) = (-1)^v c_v(x).
partial::CoeffTensor hflip_dct(const partial::CoeffTensor& t);
// Same on a float grid whose channels hold `bands` zigzag bands each (any
// FBS prefix works: the negation is per band).
GridTensor hflip_dct(const GridTensor& t, int bands);

// Flip of a rasterized (dx, dy) grid: mirrored spatially. negate_dx also
// negates the horizontal component, which turns it into the motion of the
// mirrored video; the default keeps the sign, so flip augmentation leaves
// the left/right direction readable.
GridTensor hflip_mv(const GridTensor& t, bool negate_dx = false);

struct FlipSpec {
  StreamKind kind = StreamKind::kFrequency;
  int bands = 64;          // frequency: bands per channel
  bool negate_dx = false;  // temporal
};
GridTensor hflip(const GridTensor& t, const FlipSpec& spec);

struct CropWindow {
  int y = 0;
  int x = 0;
  int h = 0;
  int w = 0;
  double scale = 1.0;
};

// Picks a scale uniformly from scales, crops a random window of side
// round(scale * target side) (clamped to the source) and resizes it
// bilinearly to (target_h, target_w).
GridTensor crop_jitter(const GridTensor& t, std::span<const double> scales, int target_h,
                       int target_w, Rng& rng, CropWindow* window = nullptr);
GridTensor crop_jitter(const GridTensor& t, std::span<const double> scales, int target_h,
                       int target_w, std::uint64_t seed, CropWindow* window = nullptr);

// Ten test views, in this order: top-left, top-left flipped, top-right,
// top-right flipped, bottom-left, bottom-left flipped, bottom-right,
// bottom-right flipped, center, center flipped.
std::vector<GridTensor> test_expand(const GridTensor& t, int target_h, int target_w,
                                    const FlipSpec& flip);

}  // namespace fcv::pipeline

#endif  // FCV_PIPELINE_AUGMENT_HPP_
