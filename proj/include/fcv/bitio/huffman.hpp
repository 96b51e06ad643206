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

#ifndef FCV_BITIO_HUFFMAN_HPP_
#define FCV_BITIO_HUFFMAN_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fcv/bitio/bit_buffer.hpp"

namespace fcv::bitio {

using Symbol = std::uint16_t;

// Longest codeword build_huffman produces by default.
inline constexpr int kDefaultMaxCodeLength = 16;
// Longest codeword a table may hold at all.
inline constexpr int kMaxSupportedCodeLength = 24;

// Canonical prefix code. Codewords are assigned in (length, symbol) order, so
// the per-symbol code lengths are the whole description of a table.
class HuffmanTable {
 public:
  HuffmanTable() = default;

  // lengths[s] is the code length of symbol s, 0 when s is absent.
  // Rejects oversubscribed length sets (Kraft sum > 1) as a corrupt stream.
  static HuffmanTable from_lengths(std::span<const std::uint8_t> lengths);

  bool empty() const { return symbol_count_ == 0; }
  std::size_t alphabet_size() const { return lengths_.size(); }
  std::size_t symbol_count() const { return symbol_count_; }
  int max_code_len() const { return max_len_; }

  bool contains(std::size_t symbol) const {
    return symbol < lengths_.size() && lengths_[symbol] != 0;
  }
  int length(Symbol symbol) const { return lengths_.at(symbol); }
  std::uint32_t code(Symbol symbol) const { return codes_.at(symbol); }
  const std::vector<std::uint8_t>& lengths() const { return lengths_; }

  // Throws kEncode for symbols the table does not cover.
  void encode(BitWriter& out, Symbol symbol) const;

  // Throws kCorruptStream (with the bit offset) on a bit pattern that is no
  // codeword, and kTruncatedStream when the codeword runs past the end.
  Symbol decode(BitReader& in) const {
    const LookupEntry e = lookup_[in.peek_bits(kLookupBits)];
    if (e.length != 0) {
      in.skip_bits(e.length);
      return e.symbol;
    }
    return decode_slow(in);
  }

 private:
  static constexpr int kLookupBits = 10;

  struct LookupEntry {
    Symbol symbol = 0;
    std::uint8_t length = 0;  // 0: not resolvable from kLookupBits bits
  };

  Symbol decode_slow(BitReader& in) const;

  std::vector<std::uint8_t> lengths_;
  std::vector<std::uint32_t> codes_;
  std::size_t symbol_count_ = 0;
  int max_len_ = 0;

  // Canonical decode state, indexed by code length.
  std::array<std::uint32_t, kMaxSupportedCodeLength + 1> first_code_{};
  std::array<std::uint32_t, kMaxSupportedCodeLength + 1> first_index_{};
  std::array<std::uint32_t, kMaxSupportedCodeLength + 1> count_{};
  std::vector<Symbol> sorted_symbols_;
  std::vector<LookupEntry> lookup_ = std::vector<LookupEntry>(std::size_t{1} << kLookupBits);
};

// Builds an optimal (length-limited when needed) canonical code for the
// given symbol counts; counts[s] is the frequency of symbol s. At least one
// count must be nonzero. A lone symbol gets a 1-bit code.
HuffmanTable build_huffman(std::span<const std::uint64_t> counts,
                           int max_code_len = kDefaultMaxCodeLength);
HuffmanTable build_huffman(const std::map<Symbol, std::uint64_t>& freqs,
                           int max_code_len = kDefaultMaxCodeLength);

BitBuffer huffman_encode(const HuffmanTable& table, std::span<const Symbol> symbols);
std::vector<Symbol> huffman_decode(const HuffmanTable& table, const BitBuffer& bits,
                                   std::size_t count);

}  // namespace fcv::bitio

#endif  // FCV_BITIO_HUFFMAN_HPP_
