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

#include "fcv/app/y4m.hpp"

#include <charconv>
#include <string>
#include <string_view>

#include "fcv/error.hpp"
#include "fcv/pipeline/export.hpp"

namespace fcv::app {
namespace {

constexpr std::string_view kSignature = "YUV4MPEG2";
constexpr std::string_view kFrameTag = "FRAME";

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v <= 0) {
    throw Error(ErrorKind::kFormat, "y4m: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string_view take_line(std::span<const std::uint8_t> bytes, std::size_t& pos) {
  std::size_t end = pos;
  while (end < bytes.size() && bytes[end] != '\n') ++end;
  if (end == bytes.size()) throw Error(ErrorKind::kFormat, "y4m: missing newline");
  std::string_view line(reinterpret_cast<const char*>(bytes.data()) + pos, end - pos);
  pos = end + 1;
  return line;
}

}  // namespace

std::vector<std::uint8_t> to_y4m(const codec::RawVideo& video) {
  codec::validate(video);
  const std::string header = std::string(kSignature) + " W" + std::to_string(video.width) + " H" +
                             std::to_string(video.height) + " F" + std::to_string(video.fps) +
                             ":1 Ip A1:1 C420jpeg\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (const codec::Picture& pic : video.frames) {
    out.insert(out.end(), kFrameTag.begin(), kFrameTag.end());
    out.push_back('\n');
    for (int c = 0; c < 3; ++c) {
      const auto& d = pic.plane(c).data;
      out.insert(out.end(), d.begin(), d.end());
    }
  }
  return out;
}

codec::RawVideo from_y4m(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  const std::string_view header = take_line(bytes, pos);
  if (header.substr(0, kSignature.size()) != kSignature) throw Error(ErrorKind::kFormat, "y4m: bad signature");
  codec::RawVideo video;
  std::size_t i = kSignature.size();
  while (i < header.size()) {
    while (i < header.size() && header[i] == ' ') ++i;
    std::size_t j = i;
    while (j < header.size() && header[j] != ' ') ++j;
    const std::string_view tok = header.substr(i, j - i);
    i = j;
    if (tok.empty()) continue;
    switch (tok[0]) {
      case 'W': video.width = parse_int(tok.substr(1), "width"); break;
      case 'H': video.height = parse_int(tok.substr(1), "height"); break;
      case 'F': {
        const std::size_t colon = tok.find(':');
        const int num = parse_int(tok.substr(1, colon - 1), "frame rate");
        const int den = colon == std::string_view::npos ? 1 : parse_int(tok.substr(colon + 1), "frame rate");
        video.fps = std::max(1, num / den);
        break;
      }
      case 'I':
        if (tok != "Ip") throw Error(ErrorKind::kUnsupportedFormat, "y4m: only progressive input");
        break;
      case 'C':
        if (tok.substr(0, 4) != "C420") {
          throw Error(ErrorKind::kUnsupportedFormat, "y4m: only 4:2:0 input, got " + std::string(tok));
        }
        break;
      default: break;
    }
  }
  if (video.width == 0 || video.height == 0) throw Error(ErrorKind::kFormat, "y4m: missing dimensions");
  if (video.width % 2 || video.height % 2) throw Error(ErrorKind::kUnsupportedFormat, "y4m: odd dimensions");
  const std::size_t luma = static_cast<std::size_t>(video.width) * video.height;
  const std::size_t frame_bytes = luma + luma / 2;
  while (pos < bytes.size()) {
    const std::string_view tag = take_line(bytes, pos);
    if (tag.substr(0, kFrameTag.size()) != kFrameTag) throw Error(ErrorKind::kFormat, "y4m: expected FRAME");
    if (bytes.size() - pos < frame_bytes) {
      throw Error(ErrorKind::kTruncatedStream, "y4m: frame " + std::to_string(video.frames.size()) + " is truncated");
    }
    codec::Picture pic(video.width, video.height);
    for (int c = 0; c < 3; ++c) {
      auto& d = pic.plane(c).data;
      std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), d.size(), d.begin());
      pos += d.size();
    }
    video.frames.push_back(std::move(pic));
  }
  return video;
}

void write_y4m(const std::filesystem::path& path, const codec::RawVideo& video) {
  pipeline::write_file_atomic(path, to_y4m(video));
}

codec::RawVideo read_y4m(const std::filesystem::path& path) { return from_y4m(pipeline::read_file(path)); }

}  // namespace fcv::app
