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

#include "fcv/bitio/bit_buffer.hpp"

#include <string>

#include "fcv/error.hpp"

namespace fcv::bitio {

void BitWriter::put_bits(std::uint32_t value, int n) {
  if (n < 1 || n > 32) throw_parameter("put_bits: bit count " + std::to_string(n) + " not in 1..32");
  if (n < 32 && (value >> n) != 0) {
    throw_parameter("put_bits: value " + std::to_string(value) + " does not fit in " +
                    std::to_string(n) + " bits");
  }
  pending_ = (pending_ << n) | value;
  pending_bits_ += n;
  while (pending_bits_ >= 8) {
    pending_bits_ -= 8;
    bytes_.push_back(static_cast<std::uint8_t>(pending_ >> pending_bits_));
  }
  pending_ &= (std::uint64_t{1} << pending_bits_) - 1;
}

int BitWriter::flush() {
  if (pending_bits_ == 0) return 0;
  const int pad = 8 - pending_bits_;
  bytes_.push_back(static_cast<std::uint8_t>(pending_ << pad));
  pending_ = 0;
  pending_bits_ = 0;
  return pad;
}

void BitWriter::put_bytes(std::span<const std::uint8_t> data) {
  if (!is_aligned()) throw_parameter("put_bytes on an unaligned writer");
  bytes_.insert(bytes_.end(), data.begin(), data.end());
}

std::vector<std::uint8_t> BitWriter::take_bytes() {
  flush();
  std::vector<std::uint8_t> out;
  out.swap(bytes_);
  return out;
}

BitBuffer BitWriter::finish() {
  BitBuffer out;
  out.bit_count = bit_count();
  out.bytes = take_bytes();
  return out;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit)
    : bytes_(bytes), limit_(bit_limit) {
  if (bit_limit > bytes.size() * 8) throw_parameter("BitReader: bit limit past end of buffer");
}

std::uint32_t BitReader::peek_bits_slow(int n) const {
  // Gather up to 8 bytes starting at the cursor's byte into a big-endian word.
  const std::uint64_t byte = pos_ >> 3;
  const int shift = static_cast<int>(pos_ & 7);
  std::uint64_t word = 0;
  const std::size_t size = bytes_.size();
  for (int i = 0; i < 8; ++i) {
    word <<= 8;
    if (byte + i < size) word |= bytes_[byte + i];
  }
  // Bits past the limit read as zero even if the buffer holds more bytes.
  const std::uint64_t avail = limit_ - pos_;
  std::uint64_t v = (word << shift) >> (64 - n);
  if (avail < static_cast<std::uint64_t>(n)) {
    const int missing = n - static_cast<int>(avail);
    v = (v >> missing) << missing;
  }
  return static_cast<std::uint32_t>(v);
}

void BitReader::fail_skip(int n) const {
  throw Error(ErrorKind::kTruncatedStream,
              "need " + std::to_string(n) + " bits, " + std::to_string(limit_ - pos_) + " remain", pos_);
}

void BitReader::fail_get(int n) const {
  if (n < 1 || n > 32) throw_parameter("get_bits: bit count " + std::to_string(n) + " not in 1..32");
  fail_skip(n);
}

}  // namespace fcv::bitio
