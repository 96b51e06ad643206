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

#include <cmath>
#include <filesystem>

#include "fcv/codec/encoder.hpp"
#include "fcv/fbs/fbs.hpp"
#include "fcv/partial/partial_decode.hpp"
#include "fcv/pipeline/augment.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/pipeline/extract.hpp"
#include "fcv/pipeline/grid_tensor.hpp"
#include "fcv/pipeline/sampling.hpp"
#include "fcv/rng.hpp"
#include "fixtures.hpp"

using namespace fcv;
using namespace fcv::pipeline;
using fcv::testing::enc;
using fcv::testing::kind_of;
using fcv::testing::make_video;

namespace {

GridTensor random_grid(Rng& rng, int h, int w, int c) {
  GridTensor g(h, w, c);
  for (float& v : g.data) v = static_cast<float>(rng.uniform() * 10.0 - 5.0);
  return g;
}

partial::CoeffTensor random_levels(Rng& rng, int h, int w) {
  partial::CoeffTensor t(h, w);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    // Decaying magnitudes, like a real intra frame.
    const int band = static_cast<int>(i % 64);
    const int mag = std::max(1, 60 / (1 + band));
    t.values[i] = rng.between(-mag, mag);
  }
  return t;
}

// Pixels of one channel rebuilt block by block through the decoder's
// dequantize + inverse transform path.
std::vector<double> pixels(const partial::CoeffTensor& t, int c) {
  const int w = t.w_blocks * 8;
  std::vector<double> px(static_cast<std::size_t>(t.h_blocks) * 8 * w);
  for (int by = 0; by < t.h_blocks; ++by) {
    for (int bx = 0; bx < t.w_blocks; ++bx) {
      codec::IntBlock lv{};
      for (int b = 0; b < 64; ++b) lv[b] = t.at(by, bx, c, b);
      const codec::RealBlock blk = codec::reconstruct_block(lv, {3});
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) px[(by * 8 + y) * w + bx * 8 + x] = blk[y * 8 + x];
      }
    }
  }
  return px;
}

std::vector<std::uint8_t> sample_stream(int frames = 24, int gop = 4) {
  return codec::encode_video(make_video(app::SynthKind::kTwoClassMotion, 64, 64, frames, 2), enc(gop, 4));
}

double mean_channel(const GridTensor& g, int c) {
  double s = 0.0;
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) s += g.at(y, x, c);
  }
  return s / (g.height * g.width);
}

}  // namespace

TEST(Sampling, TestModeTakesSegmentCenters) {
  EXPECT_EQ(segment_positions(10, 3, SampleMode::kTest), (std::vector<std::size_t>{1, 5, 8}));
  const auto p = segment_positions(100, 25, SampleMode::kTest);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(p[i], 4 * i + 2);
}

TEST(Sampling, TrainModeStaysInsideSegments) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = segment_positions(37, 3, SampleMode::kTrain, seed);
    EXPECT_LT(p[0], 12u);
    EXPECT_GE(p[1], 12u);
    EXPECT_LT(p[1], 24u);
    EXPECT_GE(p[2], 24u);
    EXPECT_LT(p[2], 37u);
  }
  EXPECT_EQ(segment_positions(37, 3, SampleMode::kTrain, 5), segment_positions(37, 3, SampleMode::kTrain, 5));
}

TEST(Sampling, ShortStreamsRepeat) {
  EXPECT_EQ(segment_positions(2, 5, SampleMode::kTest), (std::vector<std::size_t>{0, 1, 0, 1, 0}));
  EXPECT_EQ(segment_positions(1, 3, SampleMode::kTrain, 4), (std::vector<std::size_t>{0, 0, 0}));
}

TEST(Sampling, Errors) {
  EXPECT_EQ(kind_of([] { segment_positions(0, 3, SampleMode::kTest); }), ErrorKind::kEmptyStream);
  EXPECT_EQ(kind_of([] { segment_positions(5, 0, SampleMode::kTest); }), ErrorKind::kParameter);
  const auto s = codec::encode_video(make_video(app::SynthKind::kStatic, 32, 32, 3), enc(1, 4));
  const auto info = partial::parse_headers(s);
  EXPECT_EQ(kind_of([&] { uniform_sample(info, 3, StreamKind::kTemporal, SampleMode::kTest); }),
            ErrorKind::kEmptyStream);
}

TEST(Sampling, PicksTheRightFrameKind) {
  const auto s = sample_stream();
  const auto info = partial::parse_headers(s);
  for (auto kind : {StreamKind::kFrequency, StreamKind::kTemporal}) {
    for (std::uint32_t f : uniform_sample(info, 5, kind, SampleMode::kTrain, 9)) {
      EXPECT_EQ(info.frames[f].type, kind == StreamKind::kFrequency ? codec::FrameType::kI : codec::FrameType::kP);
    }
  }
  // 6 I-frames at 0, 4, ..., 20; centers of 3 segments of 2.
  EXPECT_EQ(uniform_sample(info, 3, StreamKind::kFrequency, SampleMode::kTest),
            (std::vector<std::uint32_t>{4, 12, 20}));
}

TEST(Augment, CropJitterShapeAndWindow) {
  Rng rng(1);
  const GridTensor g = random_grid(rng, 40, 50, 3);
  std::set<double> seen;
  for (int t = 0; t < 200; ++t) {
    CropWindow w;
    const GridTensor out = crop_jitter(g, kCropScales, 32, 32, rng, &w);
    ASSERT_EQ(out.height, 32);
    ASSERT_EQ(out.width, 32);
    ASSERT_EQ(out.channels, 3);
    ASSERT_GE(w.y, 0);
    ASSERT_GE(w.x, 0);
    ASSERT_LE(w.y + w.h, 40);
    ASSERT_LE(w.x + w.w, 50);
    ASSERT_EQ(w.h, static_cast<int>(std::lround(w.scale * 32)));
    seen.insert(w.scale);
  }
  EXPECT_EQ(seen.size(), kCropScales.size());
}

TEST(Augment, CropJitterFullScaleOnSameSizeIsIdentity) {
  Rng rng(2);
  const GridTensor g = random_grid(rng, 28, 28, 5);
  const std::array<double, 1> one = {1.0};
  EXPECT_EQ(crop_jitter(g, one, 28, 28, std::uint64_t{3}), g);
  EXPECT_EQ(crop_jitter(g, kCropScales, 20, 20, std::uint64_t{8}), crop_jitter(g, kCropScales, 20, 20, std::uint64_t{8}));
}

TEST(Augment, CropJitterErrors) {
  Rng rng(3);
  const GridTensor g = random_grid(rng, 10, 10, 1);
  EXPECT_EQ(kind_of([&] { crop_jitter(g, kCropScales, 28, 28, rng); }), ErrorKind::kParameter);
  const std::array<double, 1> bad = {1.5};
  EXPECT_EQ(kind_of([&] { crop_jitter(g, bad, 8, 8, rng); }), ErrorKind::kParameter);
}

TEST(Augment, DctFlipIsAnInvolution) {
  Rng rng(4);
  const auto t = random_levels(rng, 3, 5);
  EXPECT_EQ(hflip_dct(hflip_dct(t)), t);
  const GridTensor g = to_grid(fbs::select_bands(t, {16}));
  EXPECT_EQ(hflip_dct(hflip_dct(g, 16), 16), g);
}

TEST(Augment, DctFlipEqualsPixelFlip) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_levels(rng, 2, 3);
    const auto f = hflip_dct(t);
    const int w = t.w_blocks * 8;
    for (int c = 0; c < 3; ++c) {
      const auto a = pixels(t, c);
      const auto b = pixels(f, c);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t y = i / w;
        const std::size_t x = i % w;
        ASSERT_NEAR(b[y * w + (w - 1 - x)], a[i], 1e-9);
      }
    }
  }
}

TEST(Augment, DctFlipCommutesWithBandSelection) {
  Rng rng(6);
  const auto t = random_levels(rng, 4, 4);
  for (int k : {1, 6, 16, 32, 64}) {
    EXPECT_EQ(hflip_dct(to_grid(fbs::select_bands(t, {k})), k), to_grid(fbs::select_bands(hflip_dct(t), {k})));
  }
}

TEST(Augment, MotionFlip) {
  GridTensor g(1, 3, 2);
  for (int x = 0; x < 3; ++x) {
    g.at(0, x, 0) = static_cast<float>(x + 1);
    g.at(0, x, 1) = static_cast<float>(-x);
  }
  const GridTensor m = hflip_mv(g);
  EXPECT_EQ(m.at(0, 0, 0), 3.0f);
  EXPECT_EQ(m.at(0, 0, 1), -2.0f);
  const GridTensor n = hflip_mv(g, true);
  EXPECT_EQ(n.at(0, 0, 0), -3.0f);
  EXPECT_EQ(n.at(0, 0, 1), -2.0f);
  EXPECT_EQ(hflip_mv(m), g);
}

TEST(Augment, TenTestViews) {
  Rng rng(7);
  const GridTensor g = random_grid(rng, 12, 16, 2);
  const FlipSpec spec{StreamKind::kTemporal, 64, false};
  const auto views = test_expand(g, 8, 8, spec);
  ASSERT_EQ(views.size(), 10u);
  EXPECT_EQ(views[0], crop(g, 0, 0, 8, 8));
  EXPECT_EQ(views[2], crop(g, 0, 8, 8, 8));
  EXPECT_EQ(views[4], crop(g, 4, 0, 8, 8));
  EXPECT_EQ(views[6], crop(g, 4, 8, 8, 8));
  EXPECT_EQ(views[8], crop(g, 2, 4, 8, 8));
  for (int i = 0; i < 10; i += 2) EXPECT_EQ(views[i + 1], hflip_mv(views[i]));
  EXPECT_EQ(kind_of([&] { test_expand(g, 13, 8, spec); }), ErrorKind::kParameter);
}

TEST(Grid, RasterizeUniformField) {
  codec::MvField f(3, 2);
  for (auto& m : f.mv) m = {2, -1};
  const GridTensor g = rasterize_mv(f);
  EXPECT_EQ(g.height, 32);
  EXPECT_EQ(g.width, 48);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 48; ++x) {
      ASSERT_EQ(g.at(y, x, 0), 2.0f);
      ASSERT_EQ(g.at(y, x, 1), -1.0f);
    }
  }
  const GridTensor r = rasterize_mv(f, 7, 5);
  for (std::size_t i = 0; i < r.data.size(); i += 2) ASSERT_FLOAT_EQ(r.data[i], 2.0f);
}

TEST(Grid, IntraBlocksRasterizeToZero) {
  codec::MvField f(2, 2);
  for (auto& m : f.mv) m = {4, 4};
  std::fill(f.intra.begin(), f.intra.end(), 1);
  const GridTensor g = rasterize_mv(f);
  for (float v : g.data) ASSERT_EQ(v, 0.0f);
}

TEST(Grid, RasterizePreservesTheMean) {
  Rng rng(8);
  codec::MvField f(4, 3);
  double sx = 0.0;
  for (auto& m : f.mv) {
    m = {rng.between(-8, 8), rng.between(-8, 8)};
    sx += m.dx;
  }
  sx /= 12.0;
  EXPECT_NEAR(mean_channel(rasterize_mv(f), 0), sx, 1e-9);
  // Exact 2x downscale with half-pixel centers averages pixel pairs.
  EXPECT_NEAR(mean_channel(rasterize_mv(f, 24, 32), 0), sx, 1e-5);
}

TEST(Grid, ResizeSameSizeIsCopy) {
  Rng rng(9);
  const GridTensor g = random_grid(rng, 6, 7, 3);
  EXPECT_EQ(resize_bilinear(g, 6, 7), g);
}

TEST(Export, RoundTripAndSize) {
  Rng rng(10);
  std::vector<GridTensor> ts;
  for (int i = 0; i < 3; ++i) ts.push_back(random_grid(rng, 4, 5, 6));
  const TensorFile f = stack(ts, StreamKind::kFrequency, 2, R"({"video":"a.fcv"})");
  EXPECT_EQ(f.dims, (std::vector<std::uint32_t>{3, 4, 5, 6}));
  const auto bytes = serialize(f);
  EXPECT_EQ(tensor_header_size(f), 4u + 4u + 4u * 4u + 2u + f.metadata.size());
  EXPECT_EQ(bytes.size(), tensor_header_size(f) + 4 * f.element_count());
  EXPECT_EQ(deserialize(bytes), f);
  EXPECT_EQ(unstack(deserialize(bytes)), ts);
  EXPECT_EQ(serialize(f), bytes);

  const auto dir = std::filesystem::temp_directory_path() / "fcv_export_test";
  std::filesystem::create_directories(dir);
  write_tensor_file(dir / "t.fcvt", f);
  EXPECT_EQ(read_tensor_file(dir / "t.fcvt"), f);
  EXPECT_EQ(std::filesystem::file_size(dir / "t.fcvt"), bytes.size());
  std::filesystem::remove_all(dir);
}

TEST(Export, FormatErrors) {
  Rng rng(11);
  const TensorFile f = stack({random_grid(rng, 2, 2, 2)}, StreamKind::kTemporal, 0, "{}");
  const auto good = serialize(f);
  auto check = [](std::vector<std::uint8_t> b) { EXPECT_EQ(kind_of([&] { deserialize(b); }), ErrorKind::kFormat); };
  auto b = good;
  b[0] = 'X';
  check(b);
  b = good;
  b[4] = 7;  // version
  check(b);
  b = good;
  b[5] = 3;  // stream kind
  check(b);
  b = good;
  b.pop_back();
  check(b);
  b = good;
  b.push_back(0);
  check(b);
  check({});
  TensorFile g = f;
  g.metadata = "[1,2]";
  check(serialize(g));
}

TEST(Extract, TestModeYieldsTwoHundredFifty) {
  const auto s = sample_stream(48, 4);
  for (auto kind : {StreamKind::kFrequency, StreamKind::kTemporal}) {
    ExtractConfig c;
    c.kind = kind;
    c.mode = SampleMode::kTest;
    c.fbs_k = 16;
    c.target_h = c.target_w = kind == StreamKind::kFrequency ? 6 : 56;
    const auto r = extract_tensors(s, c);
    ASSERT_EQ(r.tensors.size(), 250u);
    ASSERT_EQ(r.frame_indices.size(), 250u);
    for (const auto& t : r.tensors) {
      ASSERT_EQ(t.height, c.target_h);
      ASSERT_EQ(t.width, c.target_w);
      ASSERT_EQ(t.channels, kind == StreamKind::kFrequency ? 48 : 2);
    }
  }
}

TEST(Extract, TrainModeIsSeeded) {
  const auto s = sample_stream();
  ExtractConfig c;
  c.mode = SampleMode::kTrain;
  c.fbs_k = 32;
  c.target_h = c.target_w = 6;
  c.seed = 17;
  const auto a = extract_tensors(s, c);
  ASSERT_EQ(a.tensors.size(), 3u);
  EXPECT_EQ(a.tensors[0].channels, 96);
  const auto b = extract_tensors(s, c);
  EXPECT_EQ(a.tensors, b.tensors);
  EXPECT_EQ(a.frame_indices, b.frame_indices);
  c.seed = 18;
  EXPECT_NE(extract_tensors(s, c).tensors, a.tensors);
}

TEST(Extract, TestFlipMatchesFlipBeforeSelection) {
  // The test views flip after band selection; the result must equal
  // flipping the full coefficient tensor first.
  const auto s = sample_stream();
  ExtractConfig c;
  c.fbs_k = 10;
  c.target_h = c.target_w = 8;
  c.n_frames = 1;
  const auto r = extract_tensors(s, c);
  const auto f = partial::extract_frame(s, r.frame_indices[0]);
  const GridTensor want = to_grid(fbs::select_bands(hflip_dct(*f.dct), {10}));
  EXPECT_EQ(r.tensors[1], want);
}

TEST(BandStats, ComputeAndNormalize) {
  Rng rng(12);
  std::vector<partial::CoeffTensor> ts;
  for (int i = 0; i < 4; ++i) ts.push_back(random_levels(rng, 3, 3));
  const BandStats st = compute_band_stats(ts);
  ASSERT_EQ(st.mean.size(), 192u);
  GridTensor g = to_grid(ts[0]);
  for (int i = 1; i < 4; ++i) {
    const GridTensor h = to_grid(ts[i]);
    g.data.insert(g.data.end(), h.data.begin(), h.data.end());
  }
  g.height *= 4;
  normalize_frequency(g, st, 64);
  for (int c = 0; c < 192; ++c) EXPECT_NEAR(mean_channel(g, c), 0.0, 1e-4);
  EXPECT_EQ(parse_band_stats(band_stats_json(st)).mean, st.mean);
}

TEST(BandStats, ConstantBandIsOnlyCentered) {
  partial::CoeffTensor t(2, 2);
  std::fill(t.values.begin(), t.values.end(), 5);
  const BandStats st = compute_band_stats({t});
  EXPECT_EQ(st.mean[0], 5.0);
  EXPECT_EQ(st.stddev[0], 1.0);
}

TEST(BandStats, ParseErrors) {
  EXPECT_EQ(kind_of([] { parse_band_stats("nope"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_band_stats(R"({"channels":1,"bands":64,"mean":[1],"stddev":[1]})"); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_band_stats(R"({"channels":1})"); }), ErrorKind::kConfig);
}

TEST(Normalize, TemporalScale) {
  GridTensor g(1, 1, 2);
  g.data = {8.0f, -4.0f};
  normalize_temporal(g, 8);
  EXPECT_EQ(g.data, (std::vector<float>{1.0f, -0.5f}));
}
