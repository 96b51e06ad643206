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

#ifndef FCV_APP_SYNTH_HPP_
#define FCV_APP_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fcv/codec/encoder.hpp"
#include "fcv/codec/picture.hpp"

// Deterministic synthetic fixtures.
namespace fcv::app {

enum class SynthKind {
  kStatic,          // one smooth texture, every frame identical
  kTranslate,       // periodic texture moving dx px per frame, wrapping around
  kNoise,           // independent uniform noise per frame
  kTwoClassMotion,  // textured square moving left (0) or right (1)
  kMixed,           // class shown by square brightness and by motion; see below
};

const char* synth_kind_name(SynthKind kind);
std::optional<SynthKind> parse_synth_kind(const std::string& name);

// Mixed-set variants: each drops one cue, so each stream has its own
// failure cases and they do not overlap.
enum class Variant { kBoth, kNoAppearance, kNoMotion };
const char* variant_name(Variant v);

struct SynthConfig {
  SynthKind kind = SynthKind::kTranslate;
  int width = 64;
  int height = 64;
  int frames = 16;
  std::uint64_t seed = 0;
  int dx = 3;                         // translate
  int label = -1;                     // two-class / mixed: -1 draws it from the seed
  Variant variant = Variant::kBoth;   // mixed
};

struct SynthVideo {
  codec::RawVideo video;
  int label = -1;  // -1 for unlabeled kinds
};

// Throws a parameter error unless dims are positive multiples of 16 and
// frames >= 1.
SynthVideo synthesize(const SynthConfig& cfg);

// Labeled, encoded dataset: <dir>/<name>.fcv plus labels.csv with columns
// video,label,split,variant. Splits alternate in blocks of ten videos.
struct DatasetConfig {
  SynthKind kind = SynthKind::kTwoClassMotion;
  int count = 200;
  int width = 64;
  int height = 64;
  int frames = 16;
  std::uint64_t seed = 0;
  codec::EncoderConfig encoder{8, 4, 8, 0.9};
};

struct LabeledVideo {
  std::string name;
  int label = 0;
  std::string split;  // train or test
  std::string variant;
};

inline constexpr const char* kLabelsHeader = "video,label,split,variant";

std::vector<LabeledVideo> write_dataset(const std::filesystem::path& dir, const DatasetConfig& cfg);
// Config error when labels.csv is missing or malformed.
std::vector<LabeledVideo> read_labels(const std::filesystem::path& dir);

}  // namespace fcv::app

#endif  // FCV_APP_SYNTH_HPP_
