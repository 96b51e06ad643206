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

#ifndef FCV_PIPELINE_EXPORT_HPP_
#define FCV_PIPELINE_EXPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fcv/pipeline/grid_tensor.hpp"
#include "fcv/pipeline/sampling.hpp"

// Tensor export format, version 1:
//
//   "FCVT" | version u8 | stream kind u8 (0 frequency, 1 temporal) | fbs_k u8 |
//   ndim u8 | dims u32 x ndim (big-endian) | metadata length u16 (big-endian)
//   | metadata, UTF-8 JSON | values, float32 little-endian, row-major
namespace fcv::pipeline {

inline constexpr std::uint8_t kTensorFileVersion = 1;

struct TensorFile {
  StreamKind kind = StreamKind::kFrequency;
  int fbs_k = 64;  // 0 for temporal tensors
  std::vector<std::uint32_t> dims;
  std::string metadata = "{}";  // JSON object text
  std::vector<float> values;

  std::size_t element_count() const;
  bool operator==(const TensorFile&) const = default;
};

// Header bytes before the payload.
std::size_t tensor_header_size(const TensorFile& f);

std::vector<std::uint8_t> serialize(const TensorFile& f);
// Throws kFormat on bad magic, version, kind, truncation, trailing bytes,
// or metadata that is not a JSON object.
TensorFile deserialize(std::span<const std::uint8_t> bytes);

// Writes via a temporary file in the same directory, then renames.
void write_tensor_file(const std::filesystem::path& path, const TensorFile& f);
TensorFile read_tensor_file(const std::filesystem::path& path);

// Stacks equally shaped grids into dims (N, H, W, C).
TensorFile stack(const std::vector<GridTensor>& tensors, StreamKind kind, int fbs_k,
                 std::string metadata);
std::vector<GridTensor> unstack(const TensorFile& f);

// Whole-file helpers shared with other binary formats.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace fcv::pipeline

#endif  // FCV_PIPELINE_EXPORT_HPP_
