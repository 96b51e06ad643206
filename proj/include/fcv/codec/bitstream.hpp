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

#ifndef FCV_CODEC_BITSTREAM_HPP_
#define FCV_CODEC_BITSTREAM_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fcv/bitio/bit_buffer.hpp"
#include "fcv/bitio/huffman.hpp"

// Container layout of an encoded stream. All header integers are big-endian,
// payloads are MSB-first bit strings padded to a byte boundary.
//
//   stream header   "FCV1" | version u8 | width u16 | height u16 | fps u8 |
//                   gop_size u8 | quality u8
//   table section   table count u8, then per table:
//                   table id u8 | alphabet size u16 | code length u8 x size
//   frames          frame_no u32 | type:2 pad_bits:3 reserved:3 |
//                   payload bytes u32 | payload
namespace fcv::codec {

inline constexpr std::array<std::uint8_t, 4> kStreamMagic = {'F', 'C', 'V', '1'};
inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::size_t kStreamHeaderBytes = 12;
inline constexpr std::size_t kFrameHeaderBytes = 9;

// B is a reserved code point: this codec writes I/P GOPs only.
enum class FrameType : std::uint8_t { kI = 0, kP = 1, kB = 2 };

const char* frame_type_name(FrameType type);

enum class TableId : std::uint8_t {
  kIntraCoeff = 0,  // run/size symbols of intra blocks
  kInterCoeff = 1,  // run/size symbols of residual blocks
  kMotion = 2,      // magnitude category of one MV delta component
  kMbMode = 3,      // P-frame macroblock mode: coded block pattern, or intra
};
inline constexpr int kNumTables = 4;
inline constexpr std::array<int, kNumTables> kAlphabetSizes = {256, 256, 16, 65};
inline constexpr bitio::Symbol kIntraModeSymbol = 64;

struct StreamHeader {
  int width = 0;
  int height = 0;
  int fps = 25;
  int gop_size = 12;
  int quality = 4;

  int mb_cols() const { return width / 16; }
  int mb_rows() const { return height / 16; }
  bool operator==(const StreamHeader&) const = default;
};

struct FrameHeader {
  std::uint32_t frame_no = 0;
  FrameType type = FrameType::kI;
  int pad_bits = 0;
  std::uint32_t payload_bytes = 0;

  std::uint64_t payload_bits() const { return std::uint64_t{payload_bytes} * 8 - pad_bits; }
};

struct EntropyTables {
  std::array<bitio::HuffmanTable, kNumTables> tables;

  const bitio::HuffmanTable& operator[](TableId id) const {
    return tables[static_cast<std::size_t>(id)];
  }
  bitio::HuffmanTable& operator[](TableId id) { return tables[static_cast<std::size_t>(id)]; }
};

void write_stream_header(bitio::BitWriter& out, const StreamHeader& h);
void write_tables(bitio::BitWriter& out, const EntropyTables& tables);
void write_frame_header(bitio::BitWriter& out, const FrameHeader& h);

// Byte-granular reader for the container. Counts the bytes it actually
// reads, so header-only parsing can be audited.
class ByteCursor {
 public:
  explicit ByteCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t read_u8();
  std::uint16_t read_u16();
  std::uint32_t read_u32();
  std::span<const std::uint8_t> read_bytes(std::size_t n);
  // Moves past n bytes without reading them.
  void skip(std::size_t n);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  bool at_end() const { return pos_ == bytes_.size(); }
  std::uint64_t bytes_read() const { return bytes_read_; }

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::uint64_t bytes_read_ = 0;
};

// Throws kUnsupportedFormat on a bad magic or version, kCorruptStream on
// header values outside their valid ranges.
StreamHeader read_stream_header(ByteCursor& in);
EntropyTables read_tables(ByteCursor& in);
FrameHeader read_frame_header(ByteCursor& in);

}  // namespace fcv::codec

#endif  // FCV_CODEC_BITSTREAM_HPP_
