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

// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "fcv/simd/kernels.hpp"

namespace fcv::simd {
namespace {

std::uint32_t sad16x16_avx2(const std::uint8_t* a, std::ptrdiff_t a_stride,
                            const std::uint8_t* b, std::ptrdiff_t b_stride) {
  __m256i acc = _mm256_setzero_si256();
  for (int y = 0; y < 16; y += 2) {
    const __m256i va = _mm256_set_m128i(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + a_stride)),
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(a)));
    const __m256i vb = _mm256_set_m128i(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + b_stride)),
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(b)));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(va, vb));
    a += 2 * a_stride;
    b += 2 * b_stride;
  }
  const __m128i folded = _mm_add_epi64(_mm256_castsi256_si128(acc),
                                       _mm256_extracti128_si256(acc, 1));
  return static_cast<std::uint32_t>(_mm_cvtsi128_si64(folded) +
                                    _mm_extract_epi64(folded, 1));
}

// One 1-D pass over eight rows: dst_row[r] = sum_k weight(r, k) * src_row[k],
// vectorized across the eight columns of each row. weight_stride picks the
// basis orientation; the k order matches the scalar kernel.
inline void pass_rows(const double* src, double* dst, const double* basis,
                      int weight_row_step, int weight_k_step) {
  for (int r = 0; r < 8; ++r) {
    __m256d lo = _mm256_setzero_pd();
    __m256d hi = _mm256_setzero_pd();
    for (int k = 0; k < 8; ++k) {
      const __m256d w = _mm256_set1_pd(basis[r * weight_row_step + k * weight_k_step]);
      lo = _mm256_add_pd(lo, _mm256_mul_pd(w, _mm256_loadu_pd(src + k * 8)));
      hi = _mm256_add_pd(hi, _mm256_mul_pd(w, _mm256_loadu_pd(src + k * 8 + 4)));
    }
    _mm256_storeu_pd(dst + r * 8, lo);
    _mm256_storeu_pd(dst + r * 8 + 4, hi);
  }
}

// dst[r][j] = sum_k src[r][k] * basis[k][j] (or basis[j][k]), vectorized over j.
// transposed=false: weights basis[k*8 + j]; transposed=true: basis[j*8 + k].
inline void pass_cols(const double* src, double* dst, const double* basis,
                      bool transposed) {
  alignas(32) double bt[64];
  for (int k = 0; k < 8; ++k) {
    for (int j = 0; j < 8; ++j) bt[k * 8 + j] = transposed ? basis[j * 8 + k] : basis[k * 8 + j];
  }
  for (int r = 0; r < 8; ++r) {
    __m256d lo = _mm256_setzero_pd();
    __m256d hi = _mm256_setzero_pd();
    for (int k = 0; k < 8; ++k) {
      const __m256d s = _mm256_set1_pd(src[r * 8 + k]);
      lo = _mm256_add_pd(lo, _mm256_mul_pd(_mm256_load_pd(bt + k * 8), s));
      hi = _mm256_add_pd(hi, _mm256_mul_pd(_mm256_load_pd(bt + k * 8 + 4), s));
    }
    _mm256_storeu_pd(dst + r * 8, lo);
    _mm256_storeu_pd(dst + r * 8 + 4, hi);
  }
}

void fdct8x8_avx2(const double* in, double* out) {
  const double* c = detail::dct_basis();
  alignas(32) double tmp[64];
  // tmp[u][x] = sum_y c[u][y] * in[y][x]
  pass_rows(in, tmp, c, 8, 1);
  // out[u][v] = sum_x c[v][x] * tmp[u][x]
  pass_cols(tmp, out, c, true);
}

void idct8x8_avx2(const double* in, double* out) {
  const double* c = detail::dct_basis();
  alignas(32) double tmp[64];
  // tmp[y][v] = sum_u c[u][y] * in[u][v]
  pass_rows(in, tmp, c, 1, 8);
  // out[y][x] = sum_v c[v][x] * tmp[y][v]
  pass_cols(tmp, out, c, false);
}

inline __m256d round_half_away_pd(__m256d x) {
  const __m256d t = _mm256_round_pd(x, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  const __m256d d = _mm256_sub_pd(x, t);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d up = _mm256_and_pd(_mm256_cmp_pd(d, _mm256_set1_pd(0.5), _CMP_GE_OQ), one);
  const __m256d down = _mm256_and_pd(_mm256_cmp_pd(d, _mm256_set1_pd(-0.5), _CMP_LE_OQ), one);
  return _mm256_sub_pd(_mm256_add_pd(t, up), down);
}

// Rounds eight doubles to int32 lanes.
inline __m256i round_row(const double* row) {
  const __m128i lo = _mm256_cvtpd_epi32(round_half_away_pd(_mm256_loadu_pd(row)));
  const __m128i hi = _mm256_cvtpd_epi32(round_half_away_pd(_mm256_loadu_pd(row + 4)));
  return _mm256_set_m128i(hi, lo);
}

// Saturates eight int32 lanes to [0, 255] and writes eight bytes.
inline void store_u8x8(__m256i v, std::uint8_t* out) {
  const __m128i w16 = _mm_packus_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  const __m128i w8 = _mm_packus_epi16(w16, w16);
  _mm_storel_epi64(reinterpret_cast<__m128i*>(out), w8);
}

void store8x8_avx2(const double* samples, std::uint8_t* out, std::ptrdiff_t out_stride) {
  for (int y = 0; y < 8; ++y) {
    store_u8x8(round_row(samples + y * 8), out);
    out += out_stride;
  }
}

void reconstruct8x8_avx2(const std::uint8_t* pred, std::ptrdiff_t pred_stride,
                         const double* residual, std::uint8_t* out,
                         std::ptrdiff_t out_stride) {
  for (int y = 0; y < 8; ++y) {
    const __m256i p = _mm256_cvtepu8_epi32(
        _mm_loadl_epi64(reinterpret_cast<const __m128i*>(pred)));
    store_u8x8(_mm256_add_epi32(p, round_row(residual + y * 8)), out);
    pred += pred_stride;
    out += out_stride;
  }
}

}  // namespace

namespace detail {

const KernelTable& avx2_table() {
  static const KernelTable table{Level::kAvx2, sad16x16_avx2,
                                 fdct8x8_avx2,  idct8x8_avx2,
                                 store8x8_avx2, reconstruct8x8_avx2};
  return table;
}

}  // namespace detail
}  // namespace fcv::simd
