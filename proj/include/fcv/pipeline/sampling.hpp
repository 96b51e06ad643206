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

#ifndef FCV_PIPELINE_SAMPLING_HPP_
#define FCV_PIPELINE_SAMPLING_HPP_

#include <cstdint>
#include <vector>

#include "fcv/partial/partial_decode.hpp"

namespace fcv::pipeline {

enum class StreamKind : std::uint8_t { kFrequency = 0, kTemporal = 1 };
enum class SampleMode { kTrain, kTest };

const char* stream_kind_name(StreamKind kind);

// Positions in [0, eligible) for n segment samples. Test: segment centers,
// floor((2i + 1) * eligible / (2n)). Train: a seeded uniform pick inside each
// segment [floor(i * eligible / n), floor((i + 1) * eligible / n)). With
// fewer eligible frames than n, positions repeat cyclically: i mod eligible.
std::vector<std::size_t> segment_positions(std::size_t eligible, int n, SampleMode mode,
                                           std::uint64_t seed = 0);

// Frame indices of n uniformly sampled I-frames (frequency) or P-frames
// (temporal). No eligible frame is an empty-stream error.
std::vector<std::uint32_t> uniform_sample(const partial::StreamInfo& info, int n,
                                          StreamKind kind, SampleMode mode,
                                          std::uint64_t seed = 0);

}  // namespace fcv::pipeline

#endif  // FCV_PIPELINE_SAMPLING_HPP_
