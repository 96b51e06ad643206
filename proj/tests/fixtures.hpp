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

#ifndef FCV_TESTS_FIXTURES_HPP_
#define FCV_TESTS_FIXTURES_HPP_

#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "fcv/app/synth.hpp"
#include "fcv/codec/encoder.hpp"
#include "fcv/error.hpp"

namespace fcv::testing {

inline codec::RawVideo make_video(app::SynthKind kind, int w, int h, int frames, std::uint64_t seed = 1,
                                  int dx = 3) {
  app::SynthConfig c;
  c.kind = kind;
  c.width = w;
  c.height = h;
  c.frames = frames;
  c.seed = seed;
  c.dx = dx;
  return app::synthesize(c).video;
}

inline codec::EncoderConfig enc(int gop, int q, int range = 8) {
  codec::EncoderConfig c;
  c.gop_size = gop;
  c.quality = q;
  c.search_range = range;
  return c;
}

// The fixture set the fidelity checks sweep over.
struct NamedVideo {
  const char* name;
  codec::RawVideo video;
};
inline std::vector<NamedVideo> fixture_set() {
  return {
      {"static", make_video(app::SynthKind::kStatic, 64, 48, 6, 1)},
      {"translate", make_video(app::SynthKind::kTranslate, 64, 48, 10, 2)},
      {"noise", make_video(app::SynthKind::kNoise, 48, 32, 4, 3)},
      {"two-class-motion", make_video(app::SynthKind::kTwoClassMotion, 64, 64, 9, 4)},
  };
}

inline ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

}  // namespace fcv::testing

#endif  // FCV_TESTS_FIXTURES_HPP_
