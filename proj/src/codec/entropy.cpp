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

#include "fcv/codec/entropy.hpp"

#include <bit>
#include <cstdlib>
#include <string>

#include "fcv/error.hpp"

namespace fcv::codec {
namespace {

using bitio::BitReader;
using bitio::BitWriter;

TableId coeff_table(MbKind kind) {
  return kind == MbKind::kIntra ? TableId::kIntraCoeff : TableId::kInterCoeff;
}

void write_mv_component(BitWriter& out, const bitio::HuffmanTable& table, int d) {
  const int cat = bitio::magnitude_category(d);
  if (cat >= kAlphabetSizes[static_cast<int>(TableId::kMotion)]) {
    throw Error(ErrorKind::kEncode, "motion vector delta too large to code");
  }
  table.encode(out, static_cast<bitio::Symbol>(cat));
  if (cat > 0) out.put_bits(bitio::magnitude_bits(d, cat), cat);
}

int read_mv_component(BitReader& in, const bitio::HuffmanTable& table) {
  const int cat = table.decode(in);
  return cat == 0 ? 0 : bitio::decode_magnitude(in.get_bits(cat), cat);
}

}  // namespace

void CompactFrame::add_block(const IntBlock& zigzag_levels) {
  const bitio::RleSequence seq = bitio::rle_encode(zigzag_levels);
  pairs.insert(pairs.end(), seq.pairs.begin(), seq.pairs.end());
  pair_counts.push_back(static_cast<std::uint8_t>(seq.pairs.size()));
}

SymbolCounts make_symbol_counts() {
  SymbolCounts counts;
  for (int i = 0; i < kNumTables; ++i) counts[i].assign(static_cast<std::size_t>(kAlphabetSizes[i]), 0);
  return counts;
}

void count_symbols(const CompactFrame& frame, SymbolCounts& counts) {
  std::size_t pair_at = 0;
  std::size_t block_at = 0;
  std::size_t delta_at = 0;
  auto& motion = counts[static_cast<int>(TableId::kMotion)];
  auto& mode = counts[static_cast<int>(TableId::kMbMode)];
  for (const auto& h : frame.headers) {
    if (frame.type == FrameType::kP) {
      ++mode[h.kind == MbKind::kIntra ? kIntraModeSymbol : h.cbp];
      if (h.kind == MbKind::kInter) {
        const MotionVector d = frame.mv_deltas[delta_at++];
        ++motion[static_cast<std::size_t>(bitio::magnitude_category(d.dx))];
        ++motion[static_cast<std::size_t>(bitio::magnitude_category(d.dy))];
      }
    }
    auto& table = counts[static_cast<int>(coeff_table(h.kind))];
    for (int b = 0; b < kBlocksPerMb; ++b) {
      if (h.kind == MbKind::kInter && !((h.cbp >> (5 - b)) & 1)) continue;
      const std::size_t n = frame.pair_counts[block_at++];
      bitio::count_rle_symbols(std::span(frame.pairs).subspan(pair_at, n), table);
      pair_at += n;
    }
  }
}

EntropyTables build_tables(const SymbolCounts& counts) {
  EntropyTables tables;
  for (int i = 0; i < kNumTables; ++i) {
    bool any = false;
    for (const auto c : counts[i]) any = any || c != 0;
    if (any) {
      tables.tables[i] = bitio::build_huffman(counts[i]);
    } else {
      tables.tables[i] = bitio::HuffmanTable::from_lengths(
          std::vector<std::uint8_t>(static_cast<std::size_t>(kAlphabetSizes[i]), 0));
    }
  }
  return tables;
}

void write_frame_payload(BitWriter& out, const CompactFrame& frame, const EntropyTables& tables) {
  std::size_t pair_at = 0;
  std::size_t block_at = 0;
  std::size_t delta_at = 0;
  for (const auto& h : frame.headers) {
    if (frame.type == FrameType::kP) {
      tables[TableId::kMbMode].encode(out, h.kind == MbKind::kIntra ? kIntraModeSymbol : h.cbp);
      if (h.kind == MbKind::kInter) {
        const MotionVector d = frame.mv_deltas[delta_at++];
        write_mv_component(out, tables[TableId::kMotion], d.dx);
        write_mv_component(out, tables[TableId::kMotion], d.dy);
      }
    }
    const bitio::HuffmanTable& table = tables[coeff_table(h.kind)];
    for (int b = 0; b < kBlocksPerMb; ++b) {
      if (h.kind == MbKind::kInter && !((h.cbp >> (5 - b)) & 1)) continue;
      const std::size_t n = frame.pair_counts[block_at++];
      bitio::write_rle(out, table, std::span(frame.pairs).subspan(pair_at, n));
      pair_at += n;
    }
  }
}

void parse_frame_payload(BitReader& in, FrameType type, int mb_cols, int mb_rows,
                         const EntropyTables& tables, ParsedFrame& out, ParseOptions options) {
  if (type == FrameType::kB) {
    throw Error(ErrorKind::kUnsupportedFormat, "B-frames are a reserved frame type", in.position());
  }
  const auto count = static_cast<std::size_t>(mb_cols) * mb_rows;
  out.type = type;
  out.mbs.resize(count);

  std::vector<MotionVector> deltas;
  std::vector<std::uint8_t> intra;
  if (type == FrameType::kP) {
    deltas.reserve(count);
    intra.assign(count, 0);
  }
  IntBlock scratch;
  const bitio::HuffmanTable& intra_table = tables[TableId::kIntraCoeff];
  const bitio::HuffmanTable& inter_table = tables[TableId::kInterCoeff];

  for (std::size_t i = 0; i < count; ++i) {
    MacroblockData& mb = out.mbs[i];
    mb.kind = MbKind::kIntra;
    mb.mv = {};
    mb.cbp = 0x3F;
    if (type == FrameType::kP) {
      const std::uint64_t at = in.position();
      const bitio::Symbol mode = tables[TableId::kMbMode].decode(in);
      if (mode == kIntraModeSymbol) {
        intra[i] = 1;
      } else if (mode < kIntraModeSymbol) {
        mb.kind = MbKind::kInter;
        mb.cbp = static_cast<std::uint8_t>(mode);
        const int dx = read_mv_component(in, tables[TableId::kMotion]);
        const int dy = read_mv_component(in, tables[TableId::kMotion]);
        deltas.push_back({dx, dy});
      } else {
        throw Error(ErrorKind::kCorruptStream, "invalid macroblock mode " + std::to_string(mode), at);
      }
    }
    const bool intra_mb = mb.kind == MbKind::kIntra;
    const bitio::HuffmanTable& table = intra_mb ? intra_table : inter_table;
    const bool store = intra_mb || options.keep_residuals;
    for (int b = 0; b < kBlocksPerMb; ++b) {
      if (!mb.block_coded(b)) {
        if (store) mb.blocks[b].fill(0);
        continue;
      }
      bitio::read_rle_block(in, table, store ? mb.blocks[b] : scratch);
    }
  }

  if (type == FrameType::kP) {
    out.field = diff_decode_mv(deltas, mb_cols, mb_rows, intra);
    for (std::size_t i = 0; i < count; ++i) out.mbs[i].mv = out.field.mv[i];
  }
  if (in.bits_remaining() != 0) {
    throw Error(ErrorKind::kCorruptStream,
                std::to_string(in.bits_remaining()) + " unused bits after the last macroblock",
                in.position());
  }
}

}  // namespace fcv::codec
