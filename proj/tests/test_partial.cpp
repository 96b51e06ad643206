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

#include <gtest/gtest.h>

#include "fcv/codec/dct.hpp"
#include "fcv/codec/decoder.hpp"
#include "fcv/partial/partial_decode.hpp"
#include "fixtures.hpp"

using namespace fcv;
using namespace fcv::codec;
using namespace fcv::partial;
using fcv::testing::enc;
using fcv::testing::kind_of;
using fcv::testing::make_video;

namespace {

// Expected tensor straight from the encoder's own macroblocks: luma blocks
// raster-ordered inside the macroblock, chroma repeated over 2x2 blocks.
CoeffTensor expected_tensor(const ParsedFrame& f, int cols, int rows) {
  CoeffTensor t(rows * 2, cols * 2);
  for (int by = 0; by < rows * 2; ++by) {
    for (int bx = 0; bx < cols * 2; ++bx) {
      const MacroblockData& mb = f.mbs[(by / 2) * cols + bx / 2];
      for (int b = 0; b < 64; ++b) {
        t.at(by, bx, 0, b) = mb.blocks[(by % 2) * 2 + bx % 2][b];
        t.at(by, bx, 1, b) = mb.blocks[4][b];
        t.at(by, bx, 2, b) = mb.blocks[5][b];
      }
    }
  }
  return t;
}

}  // namespace

TEST(Partial, MatchesEncoderSyntaxExactly) {
  for (const auto& fx : fcv::testing::fixture_set()) {
    for (int gop : {1, 3, 8}) {
      EncodeTrace trace;
      const auto s = encode_video(fx.video, enc(gop, 4), &trace);
      const int cols = fx.video.width / 16;
      const int rows = fx.video.height / 16;
      ExtractOptions opts;
      opts.keep_residuals = true;
      const auto feats = extract_all(s, opts);
      ASSERT_EQ(feats.size(), trace.frames.size()) << fx.name;
      for (std::size_t i = 0; i < feats.size(); ++i) {
        const ParsedFrame& want = trace.frames[i];
        ASSERT_EQ(feats[i].kind, want.type);
        ASSERT_EQ(feats[i].frame_no, i);
        if (want.type == FrameType::kI) {
          ASSERT_TRUE(feats[i].dct.has_value());
          EXPECT_FALSE(feats[i].mv_field.has_value());
          EXPECT_EQ(*feats[i].dct, expected_tensor(want, cols, rows)) << fx.name << " frame " << i;
          EXPECT_EQ(*feats[i].dct, coeff_tensor(want, cols, rows));
        } else {
          ASSERT_TRUE(feats[i].mv_field.has_value());
          EXPECT_FALSE(feats[i].dct.has_value());
          EXPECT_EQ(*feats[i].mv_field, want.field) << fx.name << " frame " << i;
          ASSERT_TRUE(feats[i].residuals.has_value());
          ASSERT_EQ(feats[i].residuals->size(), want.mbs.size());
          for (std::size_t m = 0; m < want.mbs.size(); ++m) {
            const auto& a = (*feats[i].residuals)[m];
            const auto& b = want.mbs[m];
            ASSERT_EQ(a.kind, b.kind);
            for (int blk = 0; blk < kBlocksPerMb; ++blk) {
              if (b.block_coded(blk)) {
                ASSERT_EQ(a.blocks[blk], b.blocks[blk]);
              }
            }
          }
        }
      }
    }
  }
}

TEST(Partial, NeverTouchesPixels) {
  const RawVideo v = make_video(app::SynthKind::kTwoClassMotion, 64, 64, 12);
  const auto s = encode_video(v, enc(4, 4));
  reset_op_counters();
  ExtractOptions opts;
  opts.keep_residuals = true;
  extract_all(s, opts);
  FeatureReader reader(s, {});
  while (reader.next()) {
  }
  EXPECT_EQ(op_counters().idct_calls, 0u);
  EXPECT_EQ(op_counters().pixel_writes, 0u);
  // The counters do work: the full decoder moves them.
  decode_video_full(s);
  EXPECT_GT(op_counters().idct_calls, 0u);
  EXPECT_GT(op_counters().pixel_writes, 0u);
}

TEST(Partial, FrameTypesFollowTheGop) {
  const RawVideo v = make_video(app::SynthKind::kTranslate, 32, 32, 24);
  const auto info = parse_headers(encode_video(v, enc(8, 4)));
  ASSERT_EQ(info.frames.size(), 24u);
  EXPECT_EQ(info.count(FrameType::kI), 3u);
  EXPECT_EQ(info.count(FrameType::kP), 21u);
  for (std::size_t i = 0; i < 24; ++i) {
    EXPECT_EQ(info.frames[i].type, i % 8 == 0 ? FrameType::kI : FrameType::kP) << i;
    EXPECT_EQ(info.frames[i].frame_no, i);
  }
  EXPECT_EQ(info.header.gop_size, 8);
  EXPECT_EQ(info.header.width, 32);
}

TEST(Partial, HeaderWalkReadsLittle) {
  const RawVideo v = make_video(app::SynthKind::kTranslate, 160, 128, 40, 3);
  const auto s = encode_video(v, enc(8, 2));
  ReadStats st;
  const auto info = parse_headers(s, &st);
  EXPECT_EQ(st.payload_bytes, 0u);
  EXPECT_LT(static_cast<double>(st.total()), 0.05 * static_cast<double>(s.size()))
      << st.total() << " of " << s.size();
  // Offsets tile the stream exactly.
  for (std::size_t i = 0; i + 1 < info.frames.size(); ++i) {
    EXPECT_EQ(info.frames[i].payload_offset + info.frames[i].payload_bytes, info.frames[i + 1].header_offset);
  }
  EXPECT_EQ(info.frames.back().payload_offset + info.frames.back().payload_bytes, s.size());
}

TEST(Partial, SelectiveExtractionSkipsPayloads) {
  const RawVideo v = make_video(app::SynthKind::kTwoClassMotion, 64, 64, 24);
  const auto s = encode_video(v, enc(8, 4));
  const auto info = parse_headers(s);
  ReadStats all, mv_only, none;
  EXPECT_EQ(extract_all(s, {true, true, false}, &all).size(), 24u);
  EXPECT_EQ(extract_all(s, {false, true, false}, &mv_only).size(), info.count(FrameType::kP));
  EXPECT_EQ(extract_all(s, {true, false, false}, &none).size(), info.count(FrameType::kI));
  EXPECT_LT(mv_only.payload_bytes, all.payload_bytes);
  EXPECT_LT(none.payload_bytes, all.payload_bytes);
  EXPECT_EQ(mv_only.payload_bytes + none.payload_bytes, all.payload_bytes);
}

TEST(Partial, FlatFrameIsDcOnly) {
  RawVideo v;
  v.width = 32;
  v.height = 32;
  Picture p(32, 32);
  for (int c = 0; c < 3; ++c) std::fill(p.plane(c).data.begin(), p.plane(c).data.end(), std::uint8_t{100});
  v.frames = {p};
  const auto f = extract_frame(encode_video(v, enc(1, 4)), 0);
  ASSERT_TRUE(f.dct.has_value());
  for (int by = 0; by < 4; ++by) {
    for (int bx = 0; bx < 4; ++bx) {
      for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(f.dct->at(by, bx, c, 0), 200);  // 8 * 100 / 4
        for (int b = 1; b < 64; ++b) ASSERT_EQ(f.dct->at(by, bx, c, b), 0);
      }
    }
  }
}

TEST(Partial, TranslationShowsUpAsVectors) {
  const RawVideo v = make_video(app::SynthKind::kTranslate, 96, 64, 4, 5, 3);
  const auto feats = extract_all(encode_video(v, enc(12, 2)), {false, true, false});
  ASSERT_EQ(feats.size(), 3u);
  for (const auto& f : feats) {
    const MvField& m = *f.mv_field;
    for (int y = 0; y < m.mb_rows; ++y) {
      // The left column has no in-bounds source for a rightward pan.
      for (int x = 1; x < m.mb_cols; ++x) {
        EXPECT_FALSE(m.intra[y * m.mb_cols + x]);
        EXPECT_EQ(m.mv[y * m.mb_cols + x], (MotionVector{-3, 0})) << x << "," << y;
      }
    }
  }
}

TEST(Partial, Errors) {
  const RawVideo v = make_video(app::SynthKind::kStatic, 32, 32, 3);
  auto s = encode_video(v, enc(3, 4));
  const auto info = parse_headers(s);
  EXPECT_EQ(kind_of([&] { extract_frame(s, info, 3); }), ErrorKind::kParameter);
  std::vector<std::uint8_t> empty;
  EXPECT_EQ(kind_of([&] { parse_headers(empty); }), ErrorKind::kUnsupportedFormat);
  auto cut = s;
  cut.resize(info.frames[2].payload_offset + 1);
  EXPECT_EQ(kind_of([&] { parse_headers(cut); }), ErrorKind::kTruncatedStream);
  s[0] = 'M';
  EXPECT_EQ(kind_of([&] { parse_headers(s); }), ErrorKind::kUnsupportedFormat);
}

TEST(Partial, ReaderMatchesExtractAll) {
  const RawVideo v = make_video(app::SynthKind::kTwoClassMotion, 64, 64, 10);
  const auto s = encode_video(v, enc(4, 4));
  const auto all = extract_all(s);
  FeatureReader r(s, {});
  std::size_t i = 0;
  while (auto f = r.next()) {
    ASSERT_LT(i, all.size());
    EXPECT_EQ(f->frame_no, all[i].frame_no);
    EXPECT_EQ(f->dct, all[i].dct);
    EXPECT_EQ(f->mv_field, all[i].mv_field);
    ++i;
  }
  EXPECT_EQ(i, all.size());
}
