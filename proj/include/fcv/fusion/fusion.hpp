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

#ifndef FCV_FUSION_FUSION_HPP_
#define FCV_FUSION_FUSION_HPP_

#include <span>
#include <vector>

namespace fcv::fusion {

// Per-class scores (raw, not softmax-normalized).
using ScoreVector = std::vector<double>;

// Arithmetic mean per class of one stream's frame scores.
ScoreVector video_score(std::span<const ScoreVector> frame_scores);

struct FusionWeights {
  double freq = 2.0;
  double temp = 1.0;
};

// (w_f * s_f + w_t * s_t) / (w_f + w_t). Weights must be non-negative and
// not both zero.
ScoreVector late_fuse(const ScoreVector& s_freq, const ScoreVector& s_temp, FusionWeights w);

// Index of the largest score; ties go to the lowest index.
std::size_t argmax(const ScoreVector& s);

}  // namespace fcv::fusion

#endif  // FCV_FUSION_FUSION_HPP_
