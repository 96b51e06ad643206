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

#ifndef FCV_SIMD_KERNELS_HPP_
#define FCV_SIMD_KERNELS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

// Data-parallel inner loops of the codec. Each kernel has a scalar reference
// and optional vector variants; all variants produce bit-identical results.
namespace fcv::simd {

enum class Level { kScalar, kAvx2 };

struct KernelTable {
  Level level;

  // Sum of absolute differences of two 16x16 8-bit blocks.
  std::uint32_t (*sad16x16)(const std::uint8_t* a, std::ptrdiff_t a_stride,
                            const std::uint8_t* b, std::ptrdiff_t b_stride);

  // Orthonormal 8x8 DCT-II and its inverse, row-major 64 doubles.
  void (*fdct8x8)(const double* in, double* out);
  void (*idct8x8)(const double* in, double* out);

  // out[y][x] = clamp(round_half_away(samples[y][x]), 0, 255)
  void (*store8x8)(const double* samples, std::uint8_t* out,
                   std::ptrdiff_t out_stride);

  // out[y][x] = clamp(pred[y][x] + round_half_away(residual[y][x]), 0, 255)
  void (*reconstruct8x8)(const std::uint8_t* pred, std::ptrdiff_t pred_stride,
                         const double* residual, std::uint8_t* out,
                         std::ptrdiff_t out_stride);
};

const char* level_name(Level level);
std::optional<Level> parse_level(std::string_view name);

bool is_supported(Level level);
Level best_available();

// The level used by kernels(). Starts at best_available() unless the
// FCV_SIMD environment variable names another supported level.
Level active_level();
void set_active_level(Level level);

const KernelTable& kernels();
const KernelTable& kernels(Level level);

// Rounds halves away from zero; same result as std::round, written so the
// vector variants can reproduce it exactly.
inline double round_half_away(double x) {
  double t = std::trunc(x);
  double d = x - t;
  if (d >= 0.5) t += 1.0;
  if (d <= -0.5) t -= 1.0;
  return t;
}

namespace detail {

// basis[u * 8 + x] = a(u) cos((2x + 1) u pi / 16). Built so that
// basis[u][7 - x] == (-1)^u basis[u][x] holds exactly.
const double* dct_basis();

const KernelTable& scalar_table();
#if defined(FCV_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace detail
}  // namespace fcv::simd

#endif  // FCV_SIMD_KERNELS_HPP_
