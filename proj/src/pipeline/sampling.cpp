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

#include "fcv/pipeline/sampling.hpp"

#include <string>

#include "fcv/error.hpp"
#include "fcv/rng.hpp"

namespace fcv::pipeline {

const char* stream_kind_name(StreamKind kind) {
  return kind == StreamKind::kFrequency ? "frequency" : "temporal";
}

std::vector<std::size_t> segment_positions(std::size_t eligible, int n, SampleMode mode,
                                           std::uint64_t seed) {
  if (n < 1) throw_parameter("sample count must be >= 1");
  if (eligible == 0) throw Error(ErrorKind::kEmptyStream, "no eligible frames to sample");
  const auto count = static_cast<std::size_t>(n);
  std::vector<std::size_t> out(count);
  if (eligible < count) {
    for (std::size_t i = 0; i < count; ++i) out[i] = i % eligible;
    return out;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    if (mode == SampleMode::kTest) {
      out[i] = (2 * i + 1) * eligible / (2 * count);
    } else {
      const std::size_t lo = i * eligible / count;
      const std::size_t hi = (i + 1) * eligible / count;
      out[i] = lo + rng.below(hi - lo);
    }
  }
  return out;
}

std::vector<std::uint32_t> uniform_sample(const partial::StreamInfo& info, int n,
                                          StreamKind kind, SampleMode mode, std::uint64_t seed) {
  const codec::FrameType want =
      kind == StreamKind::kFrequency ? codec::FrameType::kI : codec::FrameType::kP;
  std::vector<std::uint32_t> eligible;
  for (const auto& e : info.frames) {
    if (e.type == want) eligible.push_back(e.frame_no);
  }
  if (eligible.empty()) {
    throw Error(ErrorKind::kEmptyStream, std::string("stream has no ") +
                                             codec::frame_type_name(want) + "-frames to sample");
  }
  std::vector<std::uint32_t> out;
  for (std::size_t p : segment_positions(eligible.size(), n, mode, seed)) {
    out.push_back(eligible[p]);
  }
  return out;
}

}  // namespace fcv::pipeline
