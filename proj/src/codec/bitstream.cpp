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

#include "fcv/codec/bitstream.hpp"

#include <algorithm>
#include <string>

#include "fcv/error.hpp"

namespace fcv::codec {

const char* frame_type_name(FrameType type) {
  switch (type) {
    case FrameType::kI: return "I";
    case FrameType::kP: return "P";
    case FrameType::kB: return "B";
  }
  return "?";
}

void write_stream_header(bitio::BitWriter& out, const StreamHeader& h) {
  out.put_bytes(kStreamMagic);
  out.put_u8(kStreamVersion);
  out.put_u16(static_cast<std::uint16_t>(h.width));
  out.put_u16(static_cast<std::uint16_t>(h.height));
  out.put_u8(static_cast<std::uint8_t>(h.fps));
  out.put_u8(static_cast<std::uint8_t>(h.gop_size));
  out.put_u8(static_cast<std::uint8_t>(h.quality));
}

void write_tables(bitio::BitWriter& out, const EntropyTables& tables) {
  out.put_u8(kNumTables);
  for (int id = 0; id < kNumTables; ++id) {
    const bitio::HuffmanTable& t = tables.tables[id];
    const auto size = static_cast<std::size_t>(kAlphabetSizes[id]);
    out.put_u8(static_cast<std::uint8_t>(id));
    out.put_u16(static_cast<std::uint16_t>(size));
    for (std::size_t s = 0; s < size; ++s) {
      out.put_u8(s < t.alphabet_size() ? t.lengths()[s] : 0);
    }
  }
}

void write_frame_header(bitio::BitWriter& out, const FrameHeader& h) {
  out.put_u32(h.frame_no);
  out.put_u8(static_cast<std::uint8_t>(static_cast<int>(h.type) << 6 | h.pad_bits << 3));
  out.put_u32(h.payload_bytes);
}

void ByteCursor::need(std::size_t n) const {
  if (n > remaining()) {
    throw Error(ErrorKind::kTruncatedStream,
                "need " + std::to_string(n) + " bytes, " + std::to_string(remaining()) +
                    " remain",
                std::uint64_t{pos_} * 8);
  }
}

std::uint8_t ByteCursor::read_u8() {
  need(1);
  ++bytes_read_;
  return bytes_[pos_++];
}

std::uint16_t ByteCursor::read_u16() {
  const std::uint16_t hi = read_u8();
  return static_cast<std::uint16_t>(hi << 8 | read_u8());
}

std::uint32_t ByteCursor::read_u32() {
  const std::uint32_t hi = read_u16();
  return hi << 16 | read_u16();
}

std::span<const std::uint8_t> ByteCursor::read_bytes(std::size_t n) {
  need(n);
  auto out = bytes_.subspan(pos_, n);
  pos_ += n;
  bytes_read_ += n;
  return out;
}

void ByteCursor::skip(std::size_t n) {
  need(n);
  pos_ += n;
}

StreamHeader read_stream_header(ByteCursor& in) {
  const std::size_t at = in.position();
  if (in.remaining() < kStreamHeaderBytes) {
    throw Error(ErrorKind::kUnsupportedFormat, "stream too short for a header", at * 8);
  }
  const auto magic = in.read_bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kStreamMagic.begin())) {
    throw Error(ErrorKind::kUnsupportedFormat, "bad magic, expected FCV1", at * 8);
  }
  const int version = in.read_u8();
  if (version != kStreamVersion) {
    throw Error(ErrorKind::kUnsupportedFormat, "unsupported stream version " + std::to_string(version),
                (at + 4) * 8);
  }
  StreamHeader h;
  h.width = in.read_u16();
  h.height = in.read_u16();
  h.fps = in.read_u8();
  h.gop_size = in.read_u8();
  h.quality = in.read_u8();
  if (h.width == 0 || h.height == 0 || h.width % 16 != 0 || h.height % 16 != 0) {
    throw Error(ErrorKind::kCorruptStream, "frame dimensions are not positive multiples of 16",
                (at + 5) * 8);
  }
  if (h.gop_size == 0) throw Error(ErrorKind::kCorruptStream, "gop_size is zero", (at + 10) * 8);
  if (h.quality == 0) throw Error(ErrorKind::kCorruptStream, "quality is zero", (at + 11) * 8);
  return h;
}

EntropyTables read_tables(ByteCursor& in) {
  const std::size_t at = in.position();
  const int count = in.read_u8();
  if (count != kNumTables) {
    throw Error(ErrorKind::kCorruptStream, "expected 4 entropy tables, found " + std::to_string(count),
                at * 8);
  }
  EntropyTables tables;
  for (int i = 0; i < kNumTables; ++i) {
    const std::size_t table_at = in.position();
    const int id = in.read_u8();
    const int size = in.read_u16();
    if (id != i || size != kAlphabetSizes[i]) {
      throw Error(ErrorKind::kCorruptStream, "malformed entropy table " + std::to_string(i),
                  table_at * 8);
    }
    const auto lengths = in.read_bytes(static_cast<std::size_t>(size));
    try {
      tables.tables[i] = bitio::HuffmanTable::from_lengths(lengths);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("entropy table ") + std::to_string(i) + ": " + e.what(),
                  table_at * 8);
    }
  }
  return tables;
}

FrameHeader read_frame_header(ByteCursor& in) {
  const std::size_t at = in.position();
  FrameHeader h;
  h.frame_no = in.read_u32();
  const std::uint8_t flags = in.read_u8();
  h.payload_bytes = in.read_u32();
  const int type = flags >> 6;
  h.pad_bits = (flags >> 3) & 7;
  if (type == 3) {
    throw Error(ErrorKind::kCorruptStream, "invalid frame type code 3", (at + 4) * 8, h.frame_no);
  }
  h.type = static_cast<FrameType>(type);
  if ((flags & 7) != 0) {
    throw Error(ErrorKind::kCorruptStream, "reserved frame header bits set", (at + 4) * 8, h.frame_no);
  }
  if (h.payload_bytes == 0 && h.pad_bits != 0) {
    throw Error(ErrorKind::kCorruptStream, "pad bits on an empty payload", (at + 4) * 8, h.frame_no);
  }
  return h;
}

}  // namespace fcv::codec
