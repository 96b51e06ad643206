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

#include "fcv/codec/dct.hpp"

#include "fcv/simd/kernels.hpp"

namespace fcv::codec {

RealBlock dct8x8_forward(const RealBlock& block) {
  RealBlock out;
  simd::kernels().fdct8x8(block.data(), out.data());
  return out;
}

RealBlock dct8x8_inverse(const RealBlock& coeffs) {
  RealBlock out;
  simd::kernels().idct8x8(coeffs.data(), out.data());
  ++op_counters().idct_calls;
  return out;
}

OpCounters& op_counters() {
  thread_local OpCounters counters;
  return counters;
}

void reset_op_counters() { op_counters() = OpCounters{}; }

}  // namespace fcv::codec
