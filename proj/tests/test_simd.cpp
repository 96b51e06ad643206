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

#include <cstring>

#include "fcv/rng.hpp"
#include "fcv/simd/kernels.hpp"

using namespace fcv;
using namespace fcv::simd;

namespace {

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!is_supported(Level::kAvx2)) GTEST_SKIP() << "no AVX2 on this machine";
  }
  const KernelTable& s = kernels(Level::kScalar);
  const KernelTable& v = kernels(Level::kAvx2);
  Rng rng{42};
};

bool same_bits(const double* a, const double* b, int n) { return std::memcmp(a, b, sizeof(double) * n) == 0; }

}  // namespace

TEST(Simd, DispatchReportsLevels) {
  EXPECT_EQ(kernels(Level::kScalar).level, Level::kScalar);
  EXPECT_TRUE(is_supported(Level::kScalar));
  EXPECT_EQ(parse_level("scalar"), Level::kScalar);
  EXPECT_EQ(parse_level("avx2"), Level::kAvx2);
  EXPECT_FALSE(parse_level("neon").has_value());
  EXPECT_TRUE(is_supported(best_available()));
}

TEST_F(SimdEquivalence, Sad16x16) {
  std::vector<std::uint8_t> a(48 * 40), b(48 * 40);
  for (int t = 0; t < 2000; ++t) {
    for (auto& x : a) x = static_cast<std::uint8_t>(rng.below(256));
    for (auto& x : b) x = static_cast<std::uint8_t>(rng.below(256));
    const int ox = static_cast<int>(rng.below(32));
    const int oy = static_cast<int>(rng.below(24));
    ASSERT_EQ(s.sad16x16(a.data() + oy * 48 + ox, 48, b.data(), 48),
              v.sad16x16(a.data() + oy * 48 + ox, 48, b.data(), 48));
  }
}

TEST_F(SimdEquivalence, ForwardAndInverseDct) {
  double in[64], o1[64], o2[64];
  for (int t = 0; t < 5000; ++t) {
    for (double& x : in) x = (rng.uniform() - 0.5) * 4096.0;
    s.fdct8x8(in, o1);
    v.fdct8x8(in, o2);
    ASSERT_TRUE(same_bits(o1, o2, 64));
    s.idct8x8(in, o1);
    v.idct8x8(in, o2);
    ASSERT_TRUE(same_bits(o1, o2, 64));
  }
}

TEST_F(SimdEquivalence, StoreAndReconstruct) {
  double samples[64];
  std::uint8_t pred[16 * 8];
  std::uint8_t o1[16 * 8], o2[16 * 8];
  for (int t = 0; t < 5000; ++t) {
    for (double& x : samples) x = (rng.uniform() - 0.25) * 400.0;
    // Exact .5 values exercise the rounding rule.
    samples[rng.below(64)] = 100.5;
    samples[rng.below(64)] = -0.5;
    for (auto& p : pred) p = static_cast<std::uint8_t>(rng.below(256));
    std::memset(o1, 0, sizeof o1);
    std::memset(o2, 0, sizeof o2);
    s.store8x8(samples, o1, 16);
    v.store8x8(samples, o2, 16);
    ASSERT_EQ(std::memcmp(o1, o2, sizeof o1), 0);
    s.reconstruct8x8(pred, 16, samples, o1, 16);
    v.reconstruct8x8(pred, 16, samples, o2, 16);
    ASSERT_EQ(std::memcmp(o1, o2, sizeof o1), 0);
  }
}

TEST(Simd, SwitchingLevelsKeepsResults) {
  const Level before = active_level();
  set_active_level(Level::kScalar);
  EXPECT_EQ(active_level(), Level::kScalar);
  set_active_level(before);
  EXPECT_EQ(active_level(), before);
}
