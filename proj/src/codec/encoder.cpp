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

#include "fcv/codec/encoder.hpp"

#include <algorithm>
#include <cstring>

#include "fcv/codec/bitstream.hpp"
#include "fcv/codec/dct.hpp"
#include "fcv/codec/motion.hpp"
#include "fcv/codec/quant.hpp"
#include "fcv/error.hpp"
#include "fcv/simd/kernels.hpp"

namespace fcv::codec {
namespace {

void check_config(const EncoderConfig& cfg) {
  if (cfg.gop_size < 1 || cfg.gop_size > 255) throw_parameter("gop_size must be in 1..255");
  if (cfg.quality < 1 || cfg.quality > 255) throw_parameter("quality must be in 1..255");
  // Deltas span 2 * range and must fit a 15-bit magnitude category.
  if (cfg.search_range < 0 || cfg.search_range > 1023) {
    throw_parameter("search_range must be in 0..1023");
  }
  if (!(cfg.inter_threshold >= 0.0)) throw_parameter("inter_threshold must be >= 0");
}

bool all_zero(const IntBlock& b) {
  return std::all_of(b.begin(), b.end(), [](std::int32_t v) { return v == 0; });
}

class FrameEncoder {
 public:
  FrameEncoder(const EncoderConfig& cfg, int width, int height)
      : cfg_(cfg), q_{cfg.quality}, cols_(width / 16), rows_(height / 16) {}

  // Encodes cur against anchor (nullptr for I-frames); fills frame and recon.
  void encode(const Picture& cur, const Picture* anchor, CompactFrame& frame,
              ParsedFrame& parsed, Picture& recon) {
    const bool p_frame = anchor != nullptr;
    frame.type = p_frame ? FrameType::kP : FrameType::kI;
    parsed.type = frame.type;
    parsed.mbs.assign(static_cast<std::size_t>(cols_) * rows_, MacroblockData{});
    parsed.field = p_frame ? MvField(cols_, rows_) : MvField{};
    recon = Picture(cur.width(), cur.height());

    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        const std::size_t i = static_cast<std::size_t>(r) * cols_ + c;
        MacroblockData& mb = parsed.mbs[i];
        if (p_frame) {
          const MotionSearchResult best =
              motion_estimate(cur.y, anchor->y, c * 16, r * 16, cfg_.search_range);
          const double icost = intra_cost(cur.y, c * 16, r * 16);
          if (best.sad == 0 || best.sad < cfg_.inter_threshold * icost) {
            mb.kind = MbKind::kInter;
            mb.mv = best.mv;
            parsed.field.mv[i] = best.mv;
          } else {
            parsed.field.intra[i] = 1;
          }
        }
        encode_mb(cur, anchor, c, r, mb, recon);
        frame.headers.push_back({mb.kind, mb.cbp});
        for (int b = 0; b < kBlocksPerMb; ++b) {
          if (mb.block_coded(b)) frame.add_block(mb.blocks[b]);
        }
      }
    }
    if (p_frame) frame.mv_deltas = diff_code_mv(parsed.field);
  }

 private:
  void encode_mb(const Picture& cur, const Picture* anchor, int c, int r, MacroblockData& mb,
                 Picture& recon) {
    const auto& k = simd::kernels();
    const bool inter = mb.kind == MbKind::kInter;
    mb.cbp = inter ? 0 : 0x3F;
    for (int b = 0; b < kBlocksPerMb; ++b) {
      const BlockPos pos = block_position(b, c, r);
      const Plane& src = cur.plane(pos.plane);
      Plane& dst = recon.plane(pos.plane);
      std::uint8_t* out = dst.row(pos.y) + pos.x;

      if (!inter) {
        RealBlock samples;
        for (int y = 0; y < 8; ++y) {
          for (int x = 0; x < 8; ++x) samples[y * 8 + x] = src.at(pos.x + x, pos.y + y);
        }
        mb.blocks[b] = zigzag(quantize(dct8x8_forward(samples), q_));
        k.store8x8(reconstruct_block(mb.blocks[b], q_).data(), out, dst.width);
        continue;
      }

      const MotionVector mv = b < 4 ? mb.mv : chroma_mv(mb.mv);
      const Plane& ref = anchor->plane(pos.plane);
      const std::uint8_t* pred = ref.row(pos.y + mv.dy) + pos.x + mv.dx;
      RealBlock residual;
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          residual[y * 8 + x] = src.at(pos.x + x, pos.y + y) - pred[y * ref.width + x];
        }
      }
      mb.blocks[b] = zigzag(quantize(dct8x8_forward(residual), q_));
      if (all_zero(mb.blocks[b])) {
        for (int y = 0; y < 8; ++y) std::memcpy(out + y * dst.width, pred + y * ref.width, 8);
      } else {
        mb.cbp |= static_cast<std::uint8_t>(1 << (5 - b));
        k.reconstruct8x8(pred, ref.width, reconstruct_block(mb.blocks[b], q_).data(), out,
                         dst.width);
      }
    }
  }

  const EncoderConfig& cfg_;
  QuantConfig q_;
  int cols_;
  int rows_;
};

}  // namespace

RealBlock reconstruct_block(const IntBlock& zigzag_levels, QuantConfig q) {
  return dct8x8_inverse(dequantize(inverse_zigzag(zigzag_levels), q));
}

std::vector<std::uint8_t> encode_video(const RawVideo& video, const EncoderConfig& cfg,
                                       EncodeTrace* trace) {
  validate(video);
  check_config(cfg);

  const std::size_t n = video.frames.size();
  std::vector<CompactFrame> compact(n);
  std::vector<ParsedFrame> parsed(n);
  RawVideo recon{video.width, video.height, video.fps, std::vector<Picture>(n)};

  FrameEncoder enc(cfg, video.width, video.height);
  for (std::size_t i = 0; i < n; ++i) {
    const bool intra = i % static_cast<std::size_t>(cfg.gop_size) == 0;
    enc.encode(video.frames[i], intra ? nullptr : &recon.frames[i - 1], compact[i], parsed[i],
               recon.frames[i]);
  }

  SymbolCounts counts = make_symbol_counts();
  for (const auto& f : compact) count_symbols(f, counts);
  const EntropyTables tables = build_tables(counts);

  bitio::BitWriter out;
  write_stream_header(out, {video.width, video.height, video.fps, cfg.gop_size, cfg.quality});
  write_tables(out, tables);
  for (std::size_t i = 0; i < n; ++i) {
    bitio::BitWriter payload;
    write_frame_payload(payload, compact[i], tables);
    FrameHeader h;
    h.frame_no = static_cast<std::uint32_t>(i);
    h.type = compact[i].type;
    h.pad_bits = payload.flush();
    h.payload_bytes = static_cast<std::uint32_t>(payload.bytes().size());
    write_frame_header(out, h);
    out.put_bytes(payload.bytes());
  }

  if (trace != nullptr) {
    trace->frames = std::move(parsed);
    trace->reconstruction = std::move(recon);
  }
  return out.take_bytes();
}

}  // namespace fcv::codec
