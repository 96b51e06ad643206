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

#include "fcv/bitio/rle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "fcv/error.hpp"

namespace fcv::bitio {

RleSequence rle_encode(std::span<const std::int32_t> coeffs) {
  if (coeffs.size() != kBlockSize) {
    throw_parameter("rle_encode: expected 64 coefficients, got " + std::to_string(coeffs.size()));
  }
  RleSequence seq;
  int run = 0;
  for (const std::int32_t c : coeffs) {
    if (c == 0) {
      ++run;
    } else {
      seq.pairs.push_back({run, c});
      run = 0;
    }
  }
  return seq;
}

std::array<std::int32_t, kBlockSize> rle_decode(const RleSequence& seq) {
  std::array<std::int32_t, kBlockSize> out{};
  int pos = 0;
  for (const RunLevel& p : seq.pairs) {
    if (p.run < 0 || p.level == 0) {
      throw Error(ErrorKind::kCorruptStream, "malformed run/level pair");
    }
    pos += p.run;
    if (pos >= kBlockSize) throw Error(ErrorKind::kCorruptStream, "run/level expansion exceeds 64");
    out[pos++] = p.level;
  }
  return out;
}

int magnitude_category(std::int32_t v) {
  return std::bit_width(static_cast<std::uint32_t>(std::abs(v)));
}

std::uint32_t magnitude_bits(std::int32_t v, int category) {
  if (v >= 0) return static_cast<std::uint32_t>(v);
  return static_cast<std::uint32_t>(v + (std::int32_t{1} << category) - 1);
}

std::int32_t decode_magnitude(std::uint32_t bits, int category) {
  if (category == 0) return 0;
  // A leading 1 marks a positive value.
  if (bits >> (category - 1)) return static_cast<std::int32_t>(bits);
  return static_cast<std::int32_t>(bits) - (std::int32_t{1} << category) + 1;
}

void write_rle(BitWriter& out, const HuffmanTable& table, std::span<const RunLevel> pairs) {
  for (const RunLevel& p : pairs) {
    int run = p.run;
    while (run >= 16) {
      table.encode(out, kZrlSymbol);
      run -= 16;
    }
    const int cat = magnitude_category(p.level);
    if (cat > kMaxCategory) throw Error(ErrorKind::kEncode, "coefficient magnitude too large to code");
    table.encode(out, static_cast<Symbol>(run << 4 | cat));
    out.put_bits(magnitude_bits(p.level, cat), cat);
  }
  table.encode(out, kEobSymbol);
}

void count_rle_symbols(std::span<const RunLevel> pairs, std::span<std::uint64_t> counts) {
  for (const RunLevel& p : pairs) {
    int run = p.run;
    while (run >= 16) {
      ++counts[kZrlSymbol];
      run -= 16;
    }
    ++counts[static_cast<std::size_t>(run << 4 | magnitude_category(p.level))];
  }
  ++counts[kEobSymbol];
}

void read_rle_block(BitReader& in, const HuffmanTable& table,
                    std::span<std::int32_t, kBlockSize> out) {
  std::fill(out.begin(), out.end(), 0);
  int pos = 0;
  for (;;) {
    const std::uint64_t at = in.position();
    const Symbol s = table.decode(in);
    if (s == kEobSymbol) return;
    if (s == kZrlSymbol) {
      pos += 16;
      if (pos >= kBlockSize) throw Error(ErrorKind::kCorruptStream, "zero run exceeds block", at);
      continue;
    }
    const int run = s >> 4;
    const int cat = s & 0xF;
    if (cat == 0 || s >= kRunSizeAlphabet) {
      throw Error(ErrorKind::kCorruptStream, "invalid run/size symbol " + std::to_string(s), at);
    }
    pos += run;
    if (pos >= kBlockSize) throw Error(ErrorKind::kCorruptStream, "run/level expansion exceeds 64", at);
    out[pos++] = decode_magnitude(in.get_bits(cat), cat);
  }
}

}  // namespace fcv::bitio
