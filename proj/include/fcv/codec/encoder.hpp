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

#ifndef FCV_CODEC_ENCODER_HPP_
#define FCV_CODEC_ENCODER_HPP_

#include <cstdint>
#include <vector>

#include "fcv/codec/entropy.hpp"
#include "fcv/codec/picture.hpp"

namespace fcv::codec {

struct EncoderConfig {
  int gop_size = 12;
  int quality = 4;  // flat quantizer step
  int search_range = 8;
  // Inter is chosen when best SAD < inter_threshold * intra_cost (or the
  // match is exact).
  double inter_threshold = 0.9;
};

// What the encoder decided, kept for golden comparisons: per frame the
// quantized zigzag levels of every block and, for P-frames, the MV field.
// Uncoded residual blocks hold zeros.
struct EncodeTrace {
  std::vector<ParsedFrame> frames;
  RawVideo reconstruction;  // the encoder's closed-loop reconstruction
};

// Throws a parameter error for bad dimensions or config values.
std::vector<std::uint8_t> encode_video(const RawVideo& video, const EncoderConfig& cfg,
                                       EncodeTrace* trace = nullptr);

// Dequantizes zigzag levels and inverse-transforms them into samples (for
// intra blocks) or residuals (for inter blocks). Shared by the encoder's
// reconstruction loop and the decoder, so both produce identical pixels.
RealBlock reconstruct_block(const IntBlock& zigzag_levels, QuantConfig q);

}  // namespace fcv::codec

#endif  // FCV_CODEC_ENCODER_HPP_
