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

#include "fcv/partial/partial_decode.hpp"

#include <algorithm>
#include <string>

#include "fcv/error.hpp"

namespace fcv::partial {
namespace {

using codec::MacroblockData;
using codec::ParsedFrame;

FrameFeatures decode_entry(std::span<const std::uint8_t> stream, const StreamInfo& info,
                           const FrameIndexEntry& entry, const ExtractOptions& options,
                           ParsedFrame& scratch, ReadStats* stats) {
  const int cols = info.header.mb_cols();
  const int rows = info.header.mb_rows();
  const auto payload = stream.subspan(entry.payload_offset, entry.payload_bytes);
  const std::uint64_t bits = std::uint64_t{entry.payload_bytes} * 8 - entry.pad_bits;
  bitio::BitReader in(payload, bits);
  const bool p_frame = entry.type == FrameType::kP;
  try {
    codec::ParseOptions parse;
    parse.keep_residuals = !p_frame || options.keep_residuals;
    codec::parse_frame_payload(in, entry.type, cols, rows, info.tables, scratch, parse);
  } catch (const Error& e) {
    throw e.rebased(std::uint64_t{entry.payload_offset} * 8).with_frame(entry.frame_no);
  }
  if (stats != nullptr) stats->payload_bytes += entry.payload_bytes;

  FrameFeatures out;
  out.frame_no = entry.frame_no;
  out.kind = entry.type;
  if (p_frame) {
    out.mv_field = scratch.field;
    if (options.keep_residuals) out.residuals = scratch.mbs;
  } else {
    out.dct = coeff_tensor(scratch, cols, rows);
  }
  return out;
}

bool wanted(FrameType type, const ExtractOptions& options) {
  return (type == FrameType::kI && options.want_dct) ||
         (type == FrameType::kP && options.want_mv);
}

}  // namespace

std::size_t StreamInfo::count(FrameType type) const {
  return static_cast<std::size_t>(std::count_if(
      frames.begin(), frames.end(), [type](const FrameIndexEntry& e) { return e.type == type; }));
}

StreamInfo parse_headers(std::span<const std::uint8_t> stream, ReadStats* stats) {
  codec::ByteCursor in(stream);
  StreamInfo info;
  info.header = codec::read_stream_header(in);
  info.tables = codec::read_tables(in);
  info.stream_bytes = stream.size();
  while (!in.at_end()) {
    const auto index = static_cast<std::uint32_t>(info.frames.size());
    FrameIndexEntry e;
    e.header_offset = in.position();
    try {
      const codec::FrameHeader h = codec::read_frame_header(in);
      if (h.frame_no != index) {
        throw Error(ErrorKind::kCorruptStream,
                    "frame number " + std::to_string(h.frame_no) + " out of sequence",
                    std::uint64_t{e.header_offset} * 8);
      }
      if (h.type == FrameType::kP && index == 0) {
        throw Error(ErrorKind::kCorruptStream, "stream starts with a P-frame",
                    std::uint64_t{e.header_offset} * 8);
      }
      e.frame_no = h.frame_no;
      e.type = h.type;
      e.pad_bits = h.pad_bits;
      e.payload_bytes = h.payload_bytes;
      e.payload_offset = in.position();
      in.skip(h.payload_bytes);
    } catch (const Error& err) {
      throw err.with_frame(index);
    }
    info.frames.push_back(e);
  }
  if (stats != nullptr) stats->header_bytes += in.bytes_read();
  return info;
}

CoeffTensor coeff_tensor(const ParsedFrame& frame, int mb_cols, int mb_rows) {
  CoeffTensor t(mb_rows * 2, mb_cols * 2);
  for (int r = 0; r < mb_rows; ++r) {
    for (int c = 0; c < mb_cols; ++c) {
      const MacroblockData& mb = frame.mbs[static_cast<std::size_t>(r) * mb_cols + c];
      for (int b = 0; b < 4; ++b) {
        std::copy(mb.blocks[b].begin(), mb.blocks[b].end(),
                  &t.at(r * 2 + (b >> 1), c * 2 + (b & 1), 0, 0));
      }
      for (int ch = 1; ch <= 2; ++ch) {
        const codec::IntBlock& levels = mb.blocks[3 + ch];
        for (int b = 0; b < 4; ++b) {
          std::copy(levels.begin(), levels.end(), &t.at(r * 2 + (b >> 1), c * 2 + (b & 1), ch, 0));
        }
      }
    }
  }
  return t;
}

FrameFeatures extract_frame(std::span<const std::uint8_t> stream, const StreamInfo& info,
                            std::uint32_t frame_no, ExtractOptions options, ReadStats* stats) {
  if (frame_no >= info.frames.size()) {
    throw_parameter("frame " + std::to_string(frame_no) + " does not exist (stream has " +
                    std::to_string(info.frames.size()) + ")");
  }
  ParsedFrame scratch;
  return decode_entry(stream, info, info.frames[frame_no], options, scratch, stats);
}

FrameFeatures extract_frame(std::span<const std::uint8_t> stream, std::uint32_t frame_no) {
  const StreamInfo info = parse_headers(stream);
  return extract_frame(stream, info, frame_no);
}

FeatureReader::FeatureReader(std::span<const std::uint8_t> stream, ExtractOptions options)
    : stream_(stream), options_(options), info_(parse_headers(stream, &stats_)) {}

std::optional<FrameFeatures> FeatureReader::next() {
  while (cursor_ < info_.frames.size()) {
    const FrameIndexEntry& e = info_.frames[cursor_++];
    if (wanted(e.type, options_)) {
      return decode_entry(stream_, info_, e, options_, scratch_, &stats_);
    }
  }
  return std::nullopt;
}

std::vector<FrameFeatures> extract_all(std::span<const std::uint8_t> stream,
                                       ExtractOptions options, ReadStats* stats) {
  FeatureReader reader(stream, options);
  std::vector<FrameFeatures> out;
  while (auto f = reader.next()) out.push_back(std::move(*f));
  if (stats != nullptr) *stats = reader.stats();
  return out;
}

}  // namespace fcv::partial
