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

#ifndef FCV_CODEC_MOTION_HPP_
#define FCV_CODEC_MOTION_HPP_

#include <cstdint>
#include <vector>

#include "fcv/codec/picture.hpp"

namespace fcv::codec {

// Integer-pixel displacement from a macroblock to its match in the anchor:
// the prediction for the block at (x, y) is read from (x + dx, y + dy).
struct MotionVector {
  int dx = 0;
  int dy = 0;

  bool operator==(const MotionVector&) const = default;
};

// Per-macroblock motion of one P-frame in raster order. Intra macroblocks
// carry no motion; their mv entry is (0, 0).
struct MvField {
  int mb_cols = 0;
  int mb_rows = 0;
  std::vector<MotionVector> mv;
  std::vector<std::uint8_t> intra;  // 1 for intra-coded macroblocks

  MvField() = default;
  MvField(int cols, int rows)
      : mb_cols(cols),
        mb_rows(rows),
        mv(static_cast<std::size_t>(cols) * rows),
        intra(static_cast<std::size_t>(cols) * rows, 0) {}

  std::size_t size() const { return mv.size(); }
  bool operator==(const MvField&) const = default;
};

struct MotionSearchResult {
  MotionVector mv;
  std::uint32_t sad = 0;
};

// Exhaustive SAD search of the 16x16 luma block at (mb_x, mb_y) (pixels) of
// target over anchor, dx/dy in [-range, range] clipped to keep the block
// inside the anchor. Ties go to the smallest |dx| + |dy|, then the smallest
// dy, then the smallest dx.
MotionSearchResult motion_estimate(const Plane& target, const Plane& anchor, int mb_x,
                                   int mb_y, int range);

// Stand-in cost of intra coding the 16x16 luma block: sum |p - mean|.
double intra_cost(const Plane& target, int mb_x, int mb_y);

// Chroma displacement for a luma vector: halved, rounded toward zero.
constexpr MotionVector chroma_mv(MotionVector mv) { return {mv.dx / 2, mv.dy / 2}; }

// Builds the forward prediction of a whole picture: every macroblock is
// copied from the anchor at its vector (intra entries predict with (0, 0)).
// A vector that reaches outside the anchor is a corrupt-stream error.
Picture motion_compensate(const Picture& anchor, const MvField& field);

// Differential coding along the raster chain of inter macroblocks. The
// predictor is the previous inter macroblock's vector, (0, 0) at frame
// start; intra macroblocks are skipped and produce no delta.
std::vector<MotionVector> diff_code_mv(const MvField& field);
// Inverse of diff_code_mv given the intra mask. Throws kCorruptStream when
// the delta count does not match the number of inter macroblocks.
MvField diff_decode_mv(const std::vector<MotionVector>& deltas, int mb_cols, int mb_rows,
                       const std::vector<std::uint8_t>& intra);

// Throws kCorruptStream if the block at (x, y) of size n displaced by mv
// leaves a w x h plane.
void check_reference(int x, int y, int n, MotionVector mv, int w, int h);

}  // namespace fcv::codec

#endif  // FCV_CODEC_MOTION_HPP_
