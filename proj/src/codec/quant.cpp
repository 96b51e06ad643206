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

#include "fcv/codec/quant.hpp"

#include <string>

#include "fcv/error.hpp"
#include "fcv/simd/kernels.hpp"

namespace fcv::codec {
namespace {

void check(QuantConfig cfg) {
  if (cfg.q_step < 1) throw_parameter("q_step must be >= 1, got " + std::to_string(cfg.q_step));
}

}  // namespace

IntBlock quantize(const RealBlock& coeffs, QuantConfig cfg) {
  check(cfg);
  IntBlock out;
  const double q = cfg.q_step;
  for (int i = 0; i < 64; ++i) {
    out[i] = static_cast<std::int32_t>(simd::round_half_away(coeffs[i] / q));
  }
  return out;
}

RealBlock dequantize(const IntBlock& levels, QuantConfig cfg) {
  check(cfg);
  RealBlock out;
  for (int i = 0; i < 64; ++i) out[i] = static_cast<double>(levels[i]) * cfg.q_step;
  return out;
}

}  // namespace fcv::codec
