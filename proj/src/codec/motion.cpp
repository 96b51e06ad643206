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

#include "fcv/codec/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <tuple>

#include "fcv/codec/dct.hpp"
#include "fcv/error.hpp"
#include "fcv/simd/kernels.hpp"

namespace fcv::codec {
namespace {

void copy_block(const Plane& src, int sx, int sy, Plane& dst, int dx, int dy, int n) {
  for (int r = 0; r < n; ++r) {
    std::memcpy(dst.row(dy + r) + dx, src.row(sy + r) + sx, static_cast<std::size_t>(n));
  }
}

}  // namespace

MotionSearchResult motion_estimate(const Plane& target, const Plane& anchor, int mb_x,
                                   int mb_y, int range) {
  if (range < 0) throw_parameter("search range must be >= 0");
  const int x0 = std::max(-range, -mb_x);
  const int x1 = std::min(range, anchor.width - 16 - mb_x);
  const int y0 = std::max(-range, -mb_y);
  const int y1 = std::min(range, anchor.height - 16 - mb_y);

  const auto sad = simd::kernels().sad16x16;
  const std::uint8_t* tgt = target.row(mb_y) + mb_x;
  MotionSearchResult best{{0, 0}, UINT32_MAX};
  auto key = [](const MotionSearchResult& r) {
    return std::make_tuple(r.sad, std::abs(r.mv.dx) + std::abs(r.mv.dy), r.mv.dy, r.mv.dx);
  };
  for (int dy = y0; dy <= y1; ++dy) {
    for (int dx = x0; dx <= x1; ++dx) {
      const MotionSearchResult cand{
          {dx, dy}, sad(tgt, target.width, anchor.row(mb_y + dy) + mb_x + dx, anchor.width)};
      if (cand.sad < best.sad || (cand.sad == best.sad && key(cand) < key(best))) best = cand;
    }
  }
  return best;
}

double intra_cost(const Plane& target, int mb_x, int mb_y) {
  double sum = 0.0;
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) sum += target.at(mb_x + x, mb_y + y);
  }
  const double mean = sum / 256.0;
  double cost = 0.0;
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) cost += std::abs(target.at(mb_x + x, mb_y + y) - mean);
  }
  return cost;
}

void check_reference(int x, int y, int n, MotionVector mv, int w, int h) {
  if (x + mv.dx < 0 || y + mv.dy < 0 || x + mv.dx + n > w || y + mv.dy + n > h) {
    throw Error(ErrorKind::kCorruptStream,
                "motion vector (" + std::to_string(mv.dx) + "," + std::to_string(mv.dy) +
                    ") references outside the anchor");
  }
}

Picture motion_compensate(const Picture& anchor, const MvField& field) {
  const int w = anchor.width();
  const int h = anchor.height();
  if (field.mb_cols * 16 != w || field.mb_rows * 16 != h) {
    throw_parameter("motion field does not match the anchor dimensions");
  }
  Picture out(w, h);
  for (int r = 0; r < field.mb_rows; ++r) {
    for (int c = 0; c < field.mb_cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * field.mb_cols + c;
      const MotionVector mv = field.intra[i] ? MotionVector{} : field.mv[i];
      const MotionVector cmv = chroma_mv(mv);
      check_reference(c * 16, r * 16, 16, mv, w, h);
      check_reference(c * 8, r * 8, 8, cmv, w / 2, h / 2);
      copy_block(anchor.y, c * 16 + mv.dx, r * 16 + mv.dy, out.y, c * 16, r * 16, 16);
      copy_block(anchor.cb, c * 8 + cmv.dx, r * 8 + cmv.dy, out.cb, c * 8, r * 8, 8);
      copy_block(anchor.cr, c * 8 + cmv.dx, r * 8 + cmv.dy, out.cr, c * 8, r * 8, 8);
    }
  }
  op_counters().pixel_writes += static_cast<std::uint64_t>(w) * h * 3 / 2;
  return out;
}

std::vector<MotionVector> diff_code_mv(const MvField& field) {
  std::vector<MotionVector> deltas;
  MotionVector pred{};
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.intra[i]) continue;
    const MotionVector mv = field.mv[i];
    deltas.push_back({mv.dx - pred.dx, mv.dy - pred.dy});
    pred = mv;
  }
  return deltas;
}

MvField diff_decode_mv(const std::vector<MotionVector>& deltas, int mb_cols, int mb_rows,
                       const std::vector<std::uint8_t>& intra) {
  MvField field(mb_cols, mb_rows);
  if (intra.size() != field.size()) throw_parameter("intra mask does not match the field size");
  field.intra = intra;
  const auto inter = static_cast<std::size_t>(std::count(intra.begin(), intra.end(), 0));
  if (inter != deltas.size()) {
    throw Error(ErrorKind::kCorruptStream, "expected " + std::to_string(inter) +
                                               " motion vector deltas, got " +
                                               std::to_string(deltas.size()));
  }
  MotionVector pred{};
  std::size_t next = 0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (intra[i]) continue;
    pred = {pred.dx + deltas[next].dx, pred.dy + deltas[next].dy};
    ++next;
    field.mv[i] = pred;
  }
  return field;
}

}  // namespace fcv::codec
