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

#ifndef FCV_CODEC_DECODER_HPP_
#define FCV_CODEC_DECODER_HPP_

#include <cstdint>
#include <span>

#include "fcv/codec/picture.hpp"

namespace fcv::codec {

// Wall-clock split of a full decode. Each frame runs three phases in order:
// entropy decode, dequantize + inverse DCT, motion compensation +
// reconstruction. Header parsing covers the stream header, tables and frame
// headers.
struct DecodeStats {
  double header_seconds = 0.0;
  double entropy_seconds = 0.0;
  double idct_seconds = 0.0;
  double motion_seconds = 0.0;
  double total_seconds = 0.0;
  std::uint64_t bytes_read = 0;
  std::size_t frames = 0;
};

// Reference decoder: reconstructs every frame. Errors carry the index of the
// failing frame and the stream bit offset where decoding stopped.
RawVideo decode_video_full(std::span<const std::uint8_t> stream, DecodeStats* stats = nullptr);

}  // namespace fcv::codec

#endif  // FCV_CODEC_DECODER_HPP_
