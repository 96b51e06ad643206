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

#include "fcv/error.hpp"

namespace fcv {
namespace {

std::string compose(ErrorKind kind, const std::string& what,
                    std::optional<std::uint64_t> bit_offset,
                    std::optional<std::uint32_t> frame) {
  std::string out = error_kind_name(kind);
  out += ": ";
  out += what;
  if (frame) out += " (frame " + std::to_string(*frame) + ")";
  if (bit_offset) out += " (bit offset " + std::to_string(*bit_offset) + ")";
  return out;
}

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kTruncatedStream: return "truncated stream";
    case ErrorKind::kCorruptStream: return "corrupt stream";
    case ErrorKind::kUnsupportedFormat: return "unsupported format";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kEncode: return "encode error";
    case ErrorKind::kEmptyStream: return "empty stream";
    case ErrorKind::kSpec: return "spec error";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& what,
             std::optional<std::uint64_t> bit_offset,
             std::optional<std::uint32_t> frame)
    : std::runtime_error(compose(kind, what, bit_offset, frame)),
      kind_(kind),
      message_(what),
      bit_offset_(bit_offset),
      frame_(frame) {}

Error Error::with_frame(std::uint32_t frame) const {
  return Error(kind_, message_, bit_offset_, frame);
}

Error Error::rebased(std::uint64_t base) const {
  return Error(kind_, message_, bit_offset_ ? std::optional(*bit_offset_ + base) : std::nullopt,
               frame_);
}

void throw_parameter(const std::string& what) {
  throw Error(ErrorKind::kParameter, what);
}

}  // namespace fcv
