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

#ifndef FCV_BITIO_RLE_HPP_
#define FCV_BITIO_RLE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fcv/bitio/bit_buffer.hpp"
#include "fcv/bitio/huffman.hpp"

namespace fcv::bitio {

inline constexpr int kBlockSize = 64;

struct RunLevel {
  int run = 0;    // zeros preceding level
  int level = 0;  // nonzero

  bool operator==(const RunLevel&) const = default;
};

// Run-length form of one zigzag-ordered 8x8 block. The end-of-block marker is
// implicit: every sequence ends with one, and trailing zeros live in it.
struct RleSequence {
  std::vector<RunLevel> pairs;

  bool operator==(const RleSequence&) const = default;
};

// coeffs must hold exactly 64 values.
RleSequence rle_encode(std::span<const std::int32_t> coeffs);
// Throws kCorruptStream for zero levels, negative runs, or an expansion past
// 64 coefficients.
std::array<std::int32_t, kBlockSize> rle_decode(const RleSequence& seq);

// JPEG-style symbolization of run/level pairs: symbol = run << 4 | category,
// where category is the bit length of |level|, followed by `category` raw
// magnitude bits. Runs of 16+ zeros are split with ZRL symbols.
inline constexpr Symbol kEobSymbol = 0x00;
inline constexpr Symbol kZrlSymbol = 0xF0;
inline constexpr int kRunSizeAlphabet = 256;
inline constexpr int kMaxCategory = 15;

// Bit length of |v|; 0 for v == 0.
int magnitude_category(std::int32_t v);
// The `category` raw bits for v: v itself when positive, v + 2^category - 1
// otherwise (ones' complement of |v|).
std::uint32_t magnitude_bits(std::int32_t v, int category);
std::int32_t decode_magnitude(std::uint32_t bits, int category);

// Emits the symbols of one block's pairs (plus raw bits and EOB).
void write_rle(BitWriter& out, const HuffmanTable& table, std::span<const RunLevel> pairs);
// Counts the run/size symbols write_rle would emit.
void count_rle_symbols(std::span<const RunLevel> pairs, std::span<std::uint64_t> counts);
// Reads one block's symbols and expands them into zigzag order.
void read_rle_block(BitReader& in, const HuffmanTable& table,
                    std::span<std::int32_t, kBlockSize> out);

}  // namespace fcv::bitio

#endif  // FCV_BITIO_RLE_HPP_
