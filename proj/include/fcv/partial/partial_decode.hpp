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

#ifndef FCV_PARTIAL_PARTIAL_DECODE_HPP_
#define FCV_PARTIAL_PARTIAL_DECODE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fcv/codec/bitstream.hpp"
#include "fcv/codec/entropy.hpp"
#include "fcv/codec/motion.hpp"

// Compressed-domain feature extraction: frame types, quantized DCT levels and
// motion vectors come out of parsing and entropy decoding alone. Nothing here
// runs an inverse transform, motion compensation or touches pixels.
namespace fcv::partial {

using codec::FrameType;

// Block-grid tensor of quantized coefficients, shape
// (h_blocks, w_blocks, channels * bands), channel-major in the last axis:
// channel c's band b sits at c * bands + b. Bands are in zigzag order.
struct CoeffTensor {
  int h_blocks = 0;
  int w_blocks = 0;
  int channels = 3;
  int bands = 64;
  std::vector<std::int32_t> values;

  CoeffTensor() = default;
  CoeffTensor(int h, int w, int c = 3, int k = 64)
      : h_blocks(h), w_blocks(w), channels(c), bands(k),
        values(static_cast<std::size_t>(h) * w * c * k, 0) {}

  int depth() const { return channels * bands; }
  std::size_t index(int by, int bx, int c, int band) const {
    return ((static_cast<std::size_t>(by) * w_blocks + bx) * channels + c) * bands + band;
  }
  std::int32_t& at(int by, int bx, int c, int band) { return values[index(by, bx, c, band)]; }
  std::int32_t at(int by, int bx, int c, int band) const { return values[index(by, bx, c, band)]; }

  bool operator==(const CoeffTensor&) const = default;
};

struct FrameFeatures {
  std::uint32_t frame_no = 0;
  FrameType kind = FrameType::kI;
  std::optional<CoeffTensor> dct;          // I-frames
  std::optional<codec::MvField> mv_field;  // P-frames; intra mask included
  // P-frame residual levels, only when explicitly requested.
  std::optional<std::vector<codec::MacroblockData>> residuals;
};

struct FrameIndexEntry {
  std::uint32_t frame_no = 0;
  FrameType type = FrameType::kI;
  std::size_t header_offset = 0;   // byte offset of the frame header
  std::size_t payload_offset = 0;  // byte offset of the payload
  std::uint32_t payload_bytes = 0;
  int pad_bits = 0;
};

struct StreamInfo {
  codec::StreamHeader header;
  codec::EntropyTables tables;
  std::vector<FrameIndexEntry> frames;
  std::size_t stream_bytes = 0;

  std::size_t count(FrameType type) const;
};

// Bytes actually read from the stream (headers and payloads).
struct ReadStats {
  std::uint64_t header_bytes = 0;
  std::uint64_t payload_bytes = 0;

  std::uint64_t total() const { return header_bytes + payload_bytes; }
};

// Walks the stream header, the table section and every frame header, hopping
// over payloads via their lengths.
StreamInfo parse_headers(std::span<const std::uint8_t> stream, ReadStats* stats = nullptr);

struct ExtractOptions {
  bool want_dct = true;  // I-frames
  bool want_mv = true;   // P-frames
  // Surface P-frame residual levels instead of discarding them.
  bool keep_residuals = false;
};

// Converts the parsed macroblocks of an I-frame into a CoeffTensor; chroma
// blocks are replicated over the 2x2 luma blocks they cover.
CoeffTensor coeff_tensor(const codec::ParsedFrame& frame, int mb_cols, int mb_rows);

// Entropy-decodes one frame. I-frames yield dct, P-frames yield mv_field.
FrameFeatures extract_frame(std::span<const std::uint8_t> stream, const StreamInfo& info,
                            std::uint32_t frame_no, ExtractOptions options = {},
                            ReadStats* stats = nullptr);
FrameFeatures extract_frame(std::span<const std::uint8_t> stream, std::uint32_t frame_no);

// Display-order iteration over the requested frame kinds; payloads of other
// frames are skipped by offset, never read.
class FeatureReader {
 public:
  FeatureReader(std::span<const std::uint8_t> stream, ExtractOptions options);

  std::optional<FrameFeatures> next();
  const StreamInfo& info() const { return info_; }
  const ReadStats& stats() const { return stats_; }

 private:
  std::span<const std::uint8_t> stream_;
  ExtractOptions options_;
  ReadStats stats_;  // before info_: the constructor fills it while indexing
  StreamInfo info_;
  std::size_t cursor_ = 0;
  codec::ParsedFrame scratch_;
};

std::vector<FrameFeatures> extract_all(std::span<const std::uint8_t> stream,
                                       ExtractOptions options = {}, ReadStats* stats = nullptr);

}  // namespace fcv::partial

#endif  // FCV_PARTIAL_PARTIAL_DECODE_HPP_
