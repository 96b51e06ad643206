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

#include "fcv/fbs/fbs.hpp"

#include <algorithm>
#include <string>

#include "fcv/error.hpp"

namespace fcv::fbs {

CoeffTensor select_bands(const CoeffTensor& t, FbsConfig cfg) {
  if (cfg.k < 1 || cfg.k > 64) throw_parameter("fbs k must be in 1..64, got " + std::to_string(cfg.k));
  if (cfg.k > t.bands) {
    throw_parameter("cannot keep " + std::to_string(cfg.k) + " bands of a " +
                    std::to_string(t.bands) + "-band tensor");
  }
  CoeffTensor out(t.h_blocks, t.w_blocks, t.channels, cfg.k);
  for (int by = 0; by < t.h_blocks; ++by) {
    for (int bx = 0; bx < t.w_blocks; ++bx) {
      for (int c = 0; c < t.channels; ++c) {
        const auto* src = &t.values[t.index(by, bx, c, 0)];
        std::copy(src, src + cfg.k, &out.at(by, bx, c, 0));
      }
    }
  }
  return out;
}

std::array<double, 64> band_energy(const CoeffTensor& t) {
  if (t.values.empty()) throw_parameter("band_energy of an empty tensor");
  std::array<double, 64> sum{};
  const std::size_t cells = t.values.size() / static_cast<std::size_t>(t.bands);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const auto* v = &t.values[cell * static_cast<std::size_t>(t.bands)];
    for (int b = 0; b < t.bands; ++b) sum[b] += static_cast<double>(v[b]) * v[b];
  }
  for (double& s : sum) s /= static_cast<double>(cells);
  return sum;
}

double retained_energy(const std::array<double, 64>& energy, int k) {
  if (k < 0 || k > 64) throw_parameter("k must be in 0..64");
  double total = 0.0;
  double kept = 0.0;
  for (int b = 0; b < 64; ++b) {
    total += energy[b];
    if (b < k) kept += energy[b];
  }
  return total > 0.0 ? kept / total : 1.0;
}

}  // namespace fcv::fbs
