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

#ifndef FCV_APP_Y4M_HPP_
#define FCV_APP_Y4M_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fcv/codec/picture.hpp"

// YUV4MPEG2 (4:2:0, progressive) as the raw video container.
namespace fcv::app {

std::vector<std::uint8_t> to_y4m(const codec::RawVideo& video);
codec::RawVideo from_y4m(std::span<const std::uint8_t> bytes);

void write_y4m(const std::filesystem::path& path, const codec::RawVideo& video);
codec::RawVideo read_y4m(const std::filesystem::path& path);

}  // namespace fcv::app

#endif  // FCV_APP_Y4M_HPP_
