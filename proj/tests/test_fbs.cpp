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

#include "fcv/codec/encoder.hpp"
#include "fcv/fbs/fbs.hpp"
#include "fcv/partial/partial_decode.hpp"
#include "fcv/rng.hpp"
#include "fixtures.hpp"

using namespace fcv;
using namespace fcv::fbs;
using fcv::testing::enc;
using fcv::testing::kind_of;
using fcv::testing::make_video;

namespace {

CoeffTensor random_tensor(Rng& rng, int h = 3, int w = 4) {
  CoeffTensor t(h, w);
  for (auto& v : t.values) v = rng.between(-50, 50);
  return t;
}

CoeffTensor first_iframe(app::SynthKind kind, int q = 4) {
  const auto v = make_video(kind, 64, 64, 1, 11);
  return *partial::extract_frame(codec::encode_video(v, enc(1, q)), 0).dct;
}

}  // namespace

TEST(Fbs, FullWidthIsIdentity) {
  Rng rng(1);
  const CoeffTensor t = random_tensor(rng);
  EXPECT_EQ(select_bands(t, {64}), t);
}

TEST(Fbs, KeepsThePrefixOfEveryChannel) {
  Rng rng(2);
  const CoeffTensor t = random_tensor(rng);
  const CoeffTensor s = select_bands(t, {32});
  EXPECT_EQ(s.depth(), 96);
  EXPECT_EQ(s.bands, 32);
  EXPECT_EQ(s.h_blocks, t.h_blocks);
  EXPECT_EQ(s.w_blocks, t.w_blocks);
  for (int by = 0; by < t.h_blocks; ++by) {
    for (int bx = 0; bx < t.w_blocks; ++bx) {
      for (int c = 0; c < 3; ++c) {
        for (int b = 0; b < 32; ++b) ASSERT_EQ(s.at(by, bx, c, b), t.at(by, bx, c, b));
      }
    }
  }
}

TEST(Fbs, Composes) {
  Rng rng(3);
  const CoeffTensor t = random_tensor(rng);
  for (int a = 1; a <= 64; a += 7) {
    for (int b = 1; b <= a; b += 5) EXPECT_EQ(select_bands(select_bands(t, {a}), {b}), select_bands(t, {b}));
  }
}

TEST(Fbs, SingleBandIsTheBlockMean) {
  const CoeffTensor t = first_iframe(app::SynthKind::kStatic);
  const CoeffTensor s = select_bands(t, {1});
  for (int by = 0; by < t.h_blocks; ++by) {
    for (int bx = 0; bx < t.w_blocks; ++bx) {
      codec::IntBlock levels{};
      for (int b = 0; b < 64; ++b) levels[b] = t.at(by, bx, 0, b);
      const codec::RealBlock px = codec::reconstruct_block(levels, {4});
      double mean = 0.0;
      for (double x : px) mean += x / 64.0;
      ASSERT_NEAR(mean, s.at(by, bx, 0, 0) * 4.0 / 8.0, 1e-9);
    }
  }
}

TEST(Fbs, RetainedEnergyIsMonotone) {
  for (auto kind : {app::SynthKind::kStatic, app::SynthKind::kNoise}) {
    const auto e = band_energy(first_iframe(kind));
    double prev = 0.0;
    for (int k = 1; k <= 64; ++k) {
      const double r = retained_energy(e, k);
      EXPECT_GE(r, prev);
      prev = r;
    }
    EXPECT_DOUBLE_EQ(retained_energy(e, 64), 1.0);
  }
}

TEST(Fbs, SmoothContentConcentratesLow) {
  const auto e = band_energy(first_iframe(app::SynthKind::kStatic));
  EXPECT_GT(retained_energy(e, 16), 0.90);
}

TEST(Fbs, RejectsBadK) {
  Rng rng(4);
  const CoeffTensor t = random_tensor(rng);
  EXPECT_EQ(kind_of([&] { select_bands(t, {0}); }), ErrorKind::kParameter);
  EXPECT_EQ(kind_of([&] { select_bands(t, {65}); }), ErrorKind::kParameter);
  const CoeffTensor s = select_bands(t, {16});
  EXPECT_EQ(kind_of([&] { select_bands(s, {32}); }), ErrorKind::kParameter);
}
