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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fcv/simd/kernels.hpp"

namespace fcv::simd {
namespace {

std::array<double, 64> make_basis() {
  std::array<double, 64> basis{};
  for (int u = 0; u < 8; ++u) {
    const double scale = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
    for (int x = 0; x < 4; ++x) {
      const double c = scale * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      basis[u * 8 + x] = c;
      basis[u * 8 + (7 - x)] = (u % 2 == 0) ? c : -c;
    }
  }
  return basis;
}

std::uint32_t sad16x16_scalar(const std::uint8_t* a, std::ptrdiff_t a_stride,
                              const std::uint8_t* b, std::ptrdiff_t b_stride) {
  std::uint32_t sum = 0;
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      sum += static_cast<std::uint32_t>(std::abs(int{a[x]} - int{b[x]}));
    }
    a += a_stride;
    b += b_stride;
  }
  return sum;
}

// Separable transforms. The accumulation order (k = 0..7, starting from 0.0)
// is part of the contract: the vector variants reproduce it lane by lane.
void fdct8x8_scalar(const double* in, double* out) {
  const double* c = detail::dct_basis();
  double tmp[64];
  for (int u = 0; u < 8; ++u) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int y = 0; y < 8; ++y) acc = acc + c[u * 8 + y] * in[y * 8 + x];
      tmp[u * 8 + x] = acc;
    }
  }
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x) acc = acc + c[v * 8 + x] * tmp[u * 8 + x];
      out[u * 8 + v] = acc;
    }
  }
}

void idct8x8_scalar(const double* in, double* out) {
  const double* c = detail::dct_basis();
  double tmp[64];
  for (int y = 0; y < 8; ++y) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u) acc = acc + c[u * 8 + y] * in[u * 8 + v];
      tmp[y * 8 + v] = acc;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int v = 0; v < 8; ++v) acc = acc + c[v * 8 + x] * tmp[y * 8 + v];
      out[y * 8 + x] = acc;
    }
  }
}

std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

void store8x8_scalar(const double* samples, std::uint8_t* out,
                     std::ptrdiff_t out_stride) {
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      out[x] = clamp_u8(round_half_away(samples[y * 8 + x]));
    }
    out += out_stride;
  }
}

void reconstruct8x8_scalar(const std::uint8_t* pred, std::ptrdiff_t pred_stride,
                           const double* residual, std::uint8_t* out,
                           std::ptrdiff_t out_stride) {
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      out[x] = clamp_u8(static_cast<double>(pred[x]) + round_half_away(residual[y * 8 + x]));
    }
    pred += pred_stride;
    out += out_stride;
  }
}

}  // namespace

namespace detail {

const double* dct_basis() {
  static const std::array<double, 64> basis = make_basis();
  return basis.data();
}

const KernelTable& scalar_table() {
  static const KernelTable table{Level::kScalar, sad16x16_scalar,
                                 fdct8x8_scalar,  idct8x8_scalar,
                                 store8x8_scalar, reconstruct8x8_scalar};
  return table;
}

}  // namespace detail
}  // namespace fcv::simd
