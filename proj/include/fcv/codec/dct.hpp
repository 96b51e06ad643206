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

#ifndef FCV_CODEC_DCT_HPP_
#define FCV_CODEC_DCT_HPP_

#include <array>
#include <cstdint>

namespace fcv::codec {

// 8x8 block of reals, row-major: index = row * 8 + col. For coefficient
// blocks row is the vertical frequency u and col the horizontal frequency v.
using RealBlock = std::array<double, 64>;

// Orthonormal 2-D DCT-II and its inverse; forward(constant c) = {8c, 0, ...}.
RealBlock dct8x8_forward(const RealBlock& block);
RealBlock dct8x8_inverse(const RealBlock& coeffs);

// Work counters for the pixel-domain stages. Thread-local, so a test can
// watch exactly the work its own thread performs.
struct OpCounters {
  std::uint64_t idct_calls = 0;
  std::uint64_t pixel_writes = 0;
};

OpCounters& op_counters();
void reset_op_counters();

}  // namespace fcv::codec

#endif  // FCV_CODEC_DCT_HPP_
