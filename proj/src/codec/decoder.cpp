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

#include "fcv/codec/decoder.hpp"

#include <chrono>
#include <string>
#include <vector>

#include "fcv/codec/bitstream.hpp"
#include "fcv/codec/encoder.hpp"
#include "fcv/codec/entropy.hpp"
#include "fcv/codec/motion.hpp"
#include "fcv/error.hpp"
#include "fcv/simd/kernels.hpp"

namespace fcv::codec {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point& mark) {
  const Clock::time_point now = Clock::now();
  const double s = std::chrono::duration<double>(now - mark).count();
  mark = now;
  return s;
}

// Dequantized, inverse-transformed blocks of one frame in bitstream order:
// samples for intra blocks, residuals for coded inter blocks.
void transform_frame(const ParsedFrame& frame, QuantConfig q, std::vector<RealBlock>& out) {
  out.clear();
  for (const MacroblockData& mb : frame.mbs) {
    for (int b = 0; b < kBlocksPerMb; ++b) {
      if (mb.block_coded(b)) out.push_back(reconstruct_block(mb.blocks[b], q));
    }
  }
}

void reconstruct_frame(const ParsedFrame& frame, const std::vector<RealBlock>& blocks,
                       int mb_cols, int mb_rows, const Picture* anchor, Picture& out) {
  const auto& k = simd::kernels();
  // Prediction first (P only); coded blocks are then reconstructed in place.
  out = anchor != nullptr ? motion_compensate(*anchor, frame.field)
                          : Picture(mb_cols * 16, mb_rows * 16);
  std::size_t next = 0;
  for (int r = 0; r < mb_rows; ++r) {
    for (int c = 0; c < mb_cols; ++c) {
      const MacroblockData& mb = frame.mbs[static_cast<std::size_t>(r) * mb_cols + c];
      for (int b = 0; b < kBlocksPerMb; ++b) {
        if (!mb.block_coded(b)) continue;
        const BlockPos pos = block_position(b, c, r);
        Plane& plane = out.plane(pos.plane);
        std::uint8_t* px = plane.row(pos.y) + pos.x;
        const double* data = blocks[next++].data();
        if (mb.kind == MbKind::kIntra) {
          k.store8x8(data, px, plane.width);
        } else {
          k.reconstruct8x8(px, plane.width, data, px, plane.width);
        }
      }
    }
  }
  op_counters().pixel_writes += blocks.size() * 64;
}

}  // namespace

RawVideo decode_video_full(std::span<const std::uint8_t> stream, DecodeStats* stats) {
  DecodeStats local;
  DecodeStats& st = stats != nullptr ? *stats : local;
  st = DecodeStats{};
  const Clock::time_point start = Clock::now();
  Clock::time_point mark = start;

  ByteCursor in(stream);
  const StreamHeader header = read_stream_header(in);
  const EntropyTables tables = read_tables(in);
  const int cols = header.mb_cols();
  const int rows = header.mb_rows();
  const QuantConfig q{header.quality};
  st.header_seconds += seconds_since(mark);

  RawVideo video{header.width, header.height, header.fps, {}};
  ParsedFrame parsed;
  std::vector<RealBlock> blocks;
  while (!in.at_end()) {
    const auto index = static_cast<std::uint32_t>(video.frames.size());
    try {
      const std::size_t header_at = in.position();
      const FrameHeader fh = read_frame_header(in);
      if (fh.frame_no != index) {
        throw Error(ErrorKind::kCorruptStream,
                    "frame number " + std::to_string(fh.frame_no) + " out of sequence",
                    std::uint64_t{header_at} * 8);
      }
      if (fh.type == FrameType::kP && video.frames.empty()) {
        throw Error(ErrorKind::kCorruptStream, "P-frame without an anchor",
                    std::uint64_t{header_at} * 8);
      }
      const std::size_t payload_at = in.position();
      const auto payload = in.read_bytes(fh.payload_bytes);
      st.header_seconds += seconds_since(mark);

      try {
        bitio::BitReader bits(payload, fh.payload_bits());
        parse_frame_payload(bits, fh.type, cols, rows, tables, parsed);
      } catch (const Error& e) {
        throw e.rebased(std::uint64_t{payload_at} * 8);
      }
      st.entropy_seconds += seconds_since(mark);

      transform_frame(parsed, q, blocks);
      st.idct_seconds += seconds_since(mark);

      Picture pic;
      reconstruct_frame(parsed, blocks, cols, rows,
                        fh.type == FrameType::kP ? &video.frames.back() : nullptr, pic);
      video.frames.push_back(std::move(pic));
      st.motion_seconds += seconds_since(mark);
    } catch (const Error& e) {
      throw e.with_frame(index);
    }
  }

  st.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  st.bytes_read = in.bytes_read();
  st.frames = video.frames.size();
  return video;
}

}  // namespace fcv::codec
