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

#ifndef FCV_ERROR_HPP_
#define FCV_ERROR_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fcv {

enum class ErrorKind {
  kParameter,          // caller passed an out-of-range argument
  kTruncatedStream,    // ran out of bits/bytes
  kCorruptStream,      // bits present but not decodable
  kUnsupportedFormat,  // bad magic or version in a bitstream
  kFormat,             // bad export/checkpoint file
  kEncode,             // symbol not representable by the table
  kEmptyStream,        // no eligible frames
  kSpec,               // architecture description is inconsistent
  kConfig,             // missing labels, malformed config file
  kIo,
};

const char* error_kind_name(ErrorKind kind);

// The single exception type thrown by the library. Decoder errors carry the
// frame index and bit offset where decoding failed, when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::uint64_t> bit_offset = std::nullopt,
        std::optional<std::uint32_t> frame = std::nullopt);

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }
  std::optional<std::uint64_t> bit_offset() const { return bit_offset_; }
  std::optional<std::uint32_t> frame() const { return frame_; }

  // Copy of this error annotated with a frame index (bit offset kept).
  Error with_frame(std::uint32_t frame) const;
  // Copy with the bit offset shifted by base (payload-relative -> stream).
  Error rebased(std::uint64_t base) const;

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<std::uint64_t> bit_offset_;
  std::optional<std::uint32_t> frame_;
};

[[noreturn]] void throw_parameter(const std::string& what);

}  // namespace fcv

#endif  // FCV_ERROR_HPP_
