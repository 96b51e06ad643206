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

#ifndef FCV_CODEC_ENTROPY_HPP_
#define FCV_CODEC_ENTROPY_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fcv/bitio/bit_buffer.hpp"
#include "fcv/bitio/rle.hpp"
#include "fcv/codec/bitstream.hpp"
#include "fcv/codec/motion.hpp"
#include "fcv/codec/quant.hpp"

// Macroblock syntax shared by the encoder, the full decoder and the partial
// decoder.
//
// I-frame macroblock: six intra blocks (Y0 Y1 Y2 Y3 Cb Cr).
// P-frame macroblock: mode symbol; intra -> six intra blocks; inter -> MV
//   delta (dx then dy: category symbol + raw bits each) followed by the
//   residual blocks whose coded-block-pattern bit is set (bit 5 = Y0).
// Each block is run/size symbols with raw magnitude bits, ended by EOB.
namespace fcv::codec {

inline constexpr int kBlocksPerMb = 6;

// Plane and top-left sample of block b of the macroblock at (mb_col, mb_row).
struct BlockPos {
  int plane;  // 0 = Y, 1 = Cb, 2 = Cr
  int x;
  int y;
};

constexpr BlockPos block_position(int b, int mb_col, int mb_row) {
  if (b < 4) return {0, mb_col * 16 + (b & 1) * 8, mb_row * 16 + (b >> 1) * 8};
  return {b - 3, mb_col * 8, mb_row * 8};
}

enum class MbKind : std::uint8_t { kIntra, kInter };

struct MacroblockData {
  MbKind kind = MbKind::kIntra;
  MotionVector mv;          // inter only
  std::uint8_t cbp = 0x3F;  // inter only
  std::array<IntBlock, kBlocksPerMb> blocks{};  // zigzag-ordered levels

  bool block_coded(int b) const { return kind == MbKind::kIntra || (cbp >> (5 - b)) & 1; }
};

// Decoded form of one frame payload.
struct ParsedFrame {
  FrameType type = FrameType::kI;
  std::vector<MacroblockData> mbs;
  MvField field;  // P-frames only
};

// Encoder-side compact form of one frame: macroblock headers plus the run/
// level pairs of every coded block, in bitstream order.
struct CompactFrame {
  struct MbHeader {
    MbKind kind = MbKind::kIntra;
    std::uint8_t cbp = 0x3F;
  };

  FrameType type = FrameType::kI;
  std::vector<MbHeader> headers;
  std::vector<MotionVector> mv_deltas;   // one per inter macroblock
  std::vector<bitio::RunLevel> pairs;
  std::vector<std::uint8_t> pair_counts;  // per coded block, into pairs

  void add_block(const IntBlock& zigzag_levels);
};

using SymbolCounts = std::array<std::vector<std::uint64_t>, kNumTables>;
SymbolCounts make_symbol_counts();

void count_symbols(const CompactFrame& frame, SymbolCounts& counts);
// Builds the stream's tables from the counts; unused alphabets stay empty.
EntropyTables build_tables(const SymbolCounts& counts);
// Writes a frame payload (no header).
void write_frame_payload(bitio::BitWriter& out, const CompactFrame& frame,
                         const EntropyTables& tables);

struct ParseOptions {
  // false: residual blocks of inter macroblocks are entropy-decoded and
  // dropped instead of stored.
  bool keep_residuals = true;
};

// Parses one payload into out (reusing its storage). The reader must be
// bounded to the payload's bits. Errors carry the bit offset inside the
// payload.
void parse_frame_payload(bitio::BitReader& in, FrameType type, int mb_cols, int mb_rows,
                         const EntropyTables& tables, ParsedFrame& out,
                         ParseOptions options = {});

}  // namespace fcv::codec

#endif  // FCV_CODEC_ENTROPY_HPP_
