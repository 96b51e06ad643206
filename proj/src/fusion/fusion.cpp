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

#include "fcv/fusion/fusion.hpp"

#include <cmath>
#include <string>

#include "fcv/error.hpp"

namespace fcv::fusion {

ScoreVector video_score(std::span<const ScoreVector> frame_scores) {
  if (frame_scores.empty()) throw_parameter("video_score needs at least one frame score");
  const std::size_t classes = frame_scores.front().size();
  ScoreVector sum(classes, 0.0);
  for (const ScoreVector& s : frame_scores) {
    if (s.size() != classes) throw_parameter("frame scores have different class counts");
    for (std::size_t c = 0; c < classes; ++c) sum[c] += s[c];
  }
  for (double& v : sum) v /= static_cast<double>(frame_scores.size());
  return sum;
}

ScoreVector late_fuse(const ScoreVector& s_freq, const ScoreVector& s_temp, FusionWeights w) {
  if (s_freq.size() != s_temp.size()) throw_parameter("stream scores have different class counts");
  if (!(w.freq >= 0.0) || !(w.temp >= 0.0) || !std::isfinite(w.freq) || !std::isfinite(w.temp)) {
    throw_parameter("fusion weights must be finite and non-negative");
  }
  const double total = w.freq + w.temp;
  if (total == 0.0) throw_parameter("fusion weights are both zero");
  ScoreVector out(s_freq.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = (w.freq * s_freq[c] + w.temp * s_temp[c]) / total;
  }
  return out;
}

std::size_t argmax(const ScoreVector& s) {
  if (s.empty()) throw_parameter("argmax of an empty score vector");
  std::size_t best = 0;
  for (std::size_t c = 1; c < s.size(); ++c) {
    if (s[c] > s[best]) best = c;
  }
  return best;
}

}  // namespace fcv::fusion
