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

#ifndef FCV_BITIO_BIT_BUFFER_HPP_
#define FCV_BITIO_BIT_BUFFER_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace fcv::bitio {

// A finished, byte-aligned bit string: bit_count <= 8 * bytes.size(), and the
// bits past bit_count in the last byte are zero.
struct BitBuffer {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_count = 0;
};

// Append-only MSB-first bit sink.
class BitWriter {
 public:
  BitWriter() = default;

  // Appends the low n bits of value, most significant first.
  // n must be in 1..32 and value < 2^n.
  void put_bits(std::uint32_t value, int n);

  // Writes any partial byte with zero padding bits and returns how many
  // padding bits were added (0..7).
  int flush();

  // Big-endian byte-aligned helpers for headers. Require is_aligned().
  void put_u8(std::uint8_t v) { put_bits(v, 8); }
  void put_u16(std::uint16_t v) { put_bits(v, 16); }
  void put_u32(std::uint32_t v) { put_bits(v, 32); }
  void put_bytes(std::span<const std::uint8_t> data);

  std::uint64_t bit_count() const { return bytes_.size() * 8 + pending_bits_; }
  bool is_aligned() const { return pending_bits_ == 0; }

  // Completed bytes only; call flush() first to include a partial byte.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take_bytes();
  // Flushes and returns the bits written so far with their exact length.
  BitBuffer finish();

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t pending_ = 0;  // low pending_bits_ bits are not yet in bytes_
  int pending_bits_ = 0;
};

// MSB-first bit source over borrowed bytes. The cursor never passes the end:
// reads that would are rejected with a truncated-stream error carrying the
// bit offset.
class BitReader {
 public:
  BitReader() = default;
  explicit BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit);
  explicit BitReader(std::span<const std::uint8_t> bytes)
      : BitReader(bytes, bytes.size() * 8) {}

  // n in 1..32.
  std::uint32_t get_bits(int n) {
    if (n < 1 || n > 32 || static_cast<std::uint64_t>(n) > limit_ - pos_) fail_get(n);
    const std::uint32_t v = peek_bits(n);
    pos_ += static_cast<std::uint64_t>(n);
    return v;
  }
  bool get_bit() { return get_bits(1) != 0; }

  // Next n bits (1..32) without moving the cursor; bits past the end read as 0.
  std::uint32_t peek_bits(int n) const {
    const std::uint64_t byte = pos_ >> 3;
    if (byte + 8 <= bytes_.size() && limit_ - pos_ >= 32) {
      // Fast path: one unaligned 8-byte load holds all 32 bits.
      std::uint64_t word;
      std::memcpy(&word, bytes_.data() + byte, 8);
      if constexpr (std::endian::native == std::endian::little) word = __builtin_bswap64(word);
      return static_cast<std::uint32_t>((word << (pos_ & 7)) >> (64 - n));
    }
    return peek_bits_slow(n);
  }
  void skip_bits(int n) {
    if (static_cast<std::uint64_t>(n) > limit_ - pos_) fail_skip(n);
    pos_ += static_cast<std::uint64_t>(n);
  }

  std::uint64_t position() const { return pos_; }
  std::uint64_t bit_limit() const { return limit_; }
  std::uint64_t bits_remaining() const { return limit_ - pos_; }

  // Bytes of the underlying buffer the cursor has entered.
  std::uint64_t bytes_touched() const { return (pos_ + 7) / 8; }

 private:
  std::uint32_t peek_bits_slow(int n) const;
  [[noreturn]] void fail_get(int n) const;
  [[noreturn]] void fail_skip(int n) const;

  std::span<const std::uint8_t> bytes_;
  std::uint64_t pos_ = 0;
  std::uint64_t limit_ = 0;
};

}  // namespace fcv::bitio

#endif  // FCV_BITIO_BIT_BUFFER_HPP_
