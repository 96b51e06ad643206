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

#ifndef FCV_CODEC_QUANT_HPP_
#define FCV_CODEC_QUANT_HPP_

#include <array>
#include <cstdint>
#include <span>

#include "fcv/codec/dct.hpp"

namespace fcv::codec {

using IntBlock = std::array<std::int32_t, 64>;

// Flat quantizer: every coefficient is divided by the same step, which is
// the stream's quality value.
struct QuantConfig {
  int q_step = 1;
};

// round_half_away_from_zero(x / q_step); symmetric in x. Throws a parameter
// error for q_step < 1.
IntBlock quantize(const RealBlock& coeffs, QuantConfig cfg);
RealBlock dequantize(const IntBlock& levels, QuantConfig cfg);

// kZigzag[i] is the row-major position of the i-th coefficient in scan order
// (standard JPEG scan: 0 -> (0,0), 1 -> (0,1), 2 -> (1,0), ...).
inline constexpr std::array<int, 64> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

// Horizontal frequency (column) of zigzag position i.
constexpr int zigzag_col(int i) { return kZigzag[i] % 8; }
constexpr int zigzag_row(int i) { return kZigzag[i] / 8; }

template <typename T>
std::array<T, 64> zigzag(const std::array<T, 64>& block) {
  std::array<T, 64> out;
  for (int i = 0; i < 64; ++i) out[i] = block[kZigzag[i]];
  return out;
}

template <typename T>
std::array<T, 64> inverse_zigzag(const std::array<T, 64>& scan) {
  std::array<T, 64> out;
  for (int i = 0; i < 64; ++i) out[kZigzag[i]] = scan[i];
  return out;
}

}  // namespace fcv::codec

#endif  // FCV_CODEC_QUANT_HPP_
