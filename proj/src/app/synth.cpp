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

#include "fcv/app/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fcv/error.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/rng.hpp"

namespace fcv::app {
namespace {

// Periodic value noise: random lattice values smoothly interpolated, so the
// texture tiles seamlessly over (w, h).
class ValueNoise {
 public:
  ValueNoise(int w, int h, int cell, Rng& rng) : cell_(cell), gw_(w / cell), gh_(h / cell) {
    lattice_.resize(static_cast<std::size_t>(gw_) * gh_);
    for (double& v : lattice_) v = 2.0 * rng.uniform() - 1.0;
  }

  double at(int x, int y) const {
    const int cx = x / cell_;
    const int cy = y / cell_;
    const double fx = smooth(static_cast<double>(x % cell_) / cell_);
    const double fy = smooth(static_cast<double>(y % cell_) / cell_);
    const double a = node(cx, cy) + (node(cx + 1, cy) - node(cx, cy)) * fx;
    const double b = node(cx, cy + 1) + (node(cx + 1, cy + 1) - node(cx, cy + 1)) * fx;
    return a + (b - a) * fy;
  }

 private:
  static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
  double node(int x, int y) const {
    return lattice_[static_cast<std::size_t>(y % gh_) * gw_ + (x % gw_)];
  }

  int cell_;
  int gw_;
  int gh_;
  std::vector<double> lattice_;
};

std::uint8_t clamp8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
}

// Two octaves around mid-gray.
codec::Plane texture(int w, int h, double amplitude, Rng& rng) {
  const ValueNoise coarse(w, h, 8, rng);
  const ValueNoise fine(w, h, 4, rng);
  codec::Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) p.at(x, y) = clamp8(128.0 + amplitude * (0.75 * coarse.at(x, y) + 0.25 * fine.at(x, y)));
  }
  return p;
}

int wrap(int v, int n) { return ((v % n) + n) % n; }

codec::Plane shifted(const codec::Plane& p, int dx) {
  codec::Plane out(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) out.at(x, y) = p.at(wrap(x - dx, p.width), y);
  }
  return out;
}

codec::Picture still(int w, int h, Rng& rng) {
  codec::Picture pic(w, h);
  pic.y = texture(w, h, 60.0, rng);
  pic.cb = texture(w / 2, h / 2, 20.0, rng);
  pic.cr = texture(w / 2, h / 2, 20.0, rng);
  return pic;
}

// Square on a static background. direction -1/0/+1, brightness offset in
// luma levels.
codec::RawVideo moving_square(const SynthConfig& cfg, Rng& rng, int direction, double offset) {
  const int w = cfg.width;
  const int h = cfg.height;
  const int side = std::max(16, std::min(w, h) / 2);
  const codec::Picture background = still(w, h, rng);
  const codec::Plane square = texture(side, side, 50.0, rng);
  const int speed = rng.between(2, 4);
  const int x0 = rng.between(0, w - 1);
  const int y0 = rng.between(0, h - side);
  const int tint = rng.between(-30, 30);

  codec::RawVideo video{w, h, 25, {}};
  for (int t = 0; t < cfg.frames; ++t) {
    codec::Picture pic = background;
    const int left = wrap(x0 + direction * speed * t, w);
    for (int sy = 0; sy < side; ++sy) {
      for (int sx = 0; sx < side; ++sx) {
        const int x = (left + sx) % w;
        const int y = y0 + sy;
        pic.y.at(x, y) = clamp8(square.at(sx, sy) + offset);
        if (x % 2 == 0 && y % 2 == 0) {
          pic.cb.at(x / 2, y / 2) = clamp8(128.0 + tint);
          pic.cr.at(x / 2, y / 2) = clamp8(128.0 - tint);
        }
      }
    }
    video.frames.push_back(std::move(pic));
  }
  return video;
}

}  // namespace

const char* synth_kind_name(SynthKind kind) {
  switch (kind) {
    case SynthKind::kStatic: return "static";
    case SynthKind::kTranslate: return "translate";
    case SynthKind::kNoise: return "noise";
    case SynthKind::kTwoClassMotion: return "two-class-motion";
    case SynthKind::kMixed: return "mixed";
  }
  return "?";
}

std::optional<SynthKind> parse_synth_kind(const std::string& name) {
  for (SynthKind k : {SynthKind::kStatic, SynthKind::kTranslate, SynthKind::kNoise, SynthKind::kTwoClassMotion,
                      SynthKind::kMixed}) {
    if (name == synth_kind_name(k)) return k;
  }
  return std::nullopt;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kBoth: return "both";
    case Variant::kNoAppearance: return "no-appearance";
    case Variant::kNoMotion: return "no-motion";
  }
  return "?";
}

SynthVideo synthesize(const SynthConfig& cfg) {
  if (cfg.width < 16 || cfg.height < 16 || cfg.width % 16 || cfg.height % 16) {
    throw_parameter("synth dims must be positive multiples of 16, got " + std::to_string(cfg.width) + "x" +
                    std::to_string(cfg.height));
  }
  if (cfg.frames < 1) throw_parameter("synth needs at least one frame");
  if (cfg.label < -1 || cfg.label > 1) throw_parameter("synth label must be -1, 0 or 1");
  Rng rng(cfg.seed);
  SynthVideo out;
  codec::RawVideo& video = out.video;
  video.width = cfg.width;
  video.height = cfg.height;

  switch (cfg.kind) {
    case SynthKind::kStatic: {
      const codec::Picture pic = still(cfg.width, cfg.height, rng);
      video.frames.assign(static_cast<std::size_t>(cfg.frames), pic);
      break;
    }
    case SynthKind::kTranslate: {
      const codec::Picture base = still(cfg.width, cfg.height, rng);
      for (int t = 0; t < cfg.frames; ++t) {
        codec::Picture pic(cfg.width, cfg.height);
        pic.y = shifted(base.y, cfg.dx * t);
        // Chroma is half resolution: shift by the luma offset halved (floor).
        const int cdx = static_cast<int>(std::floor(cfg.dx * t / 2.0));
        pic.cb = shifted(base.cb, cdx);
        pic.cr = shifted(base.cr, cdx);
        video.frames.push_back(std::move(pic));
      }
      break;
    }
    case SynthKind::kNoise:
      for (int t = 0; t < cfg.frames; ++t) {
        codec::Picture pic(cfg.width, cfg.height);
        for (int c = 0; c < 3; ++c) {
          for (auto& v : pic.plane(c).data) v = static_cast<std::uint8_t>(rng.below(256));
        }
        video.frames.push_back(std::move(pic));
      }
      break;
    case SynthKind::kTwoClassMotion:
    case SynthKind::kMixed: {
      out.label = cfg.label >= 0 ? cfg.label : static_cast<int>(rng.below(2));
      const int sign = out.label == 1 ? 1 : -1;
      const bool mixed = cfg.kind == SynthKind::kMixed;
      const int direction = mixed && cfg.variant == Variant::kNoMotion ? 0 : sign;
      const double offset = mixed && cfg.variant != Variant::kNoAppearance ? 60.0 * sign : 0.0;
      video = moving_square(cfg, rng, direction, offset);
      break;
    }
  }
  return out;
}

std::vector<LabeledVideo> write_dataset(const std::filesystem::path& dir, const DatasetConfig& cfg) {
  if (cfg.kind != SynthKind::kTwoClassMotion && cfg.kind != SynthKind::kMixed) {
    throw_parameter(std::string("no labeled dataset for kind ") + synth_kind_name(cfg.kind));
  }
  if (cfg.count < 2) throw_parameter("dataset needs at least two videos");
  std::filesystem::create_directories(dir);
  std::vector<LabeledVideo> items;
  std::string csv = std::string(kLabelsHeader) + "\n";
  for (int i = 0; i < cfg.count; ++i) {
    SynthConfig sc;
    sc.kind = cfg.kind;
    sc.width = cfg.width;
    sc.height = cfg.height;
    sc.frames = cfg.frames;
    sc.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(i));
    sc.label = i % 2;
    if (cfg.kind == SynthKind::kMixed) {
      const int r = i % 5;
      sc.variant = r < 3 ? Variant::kBoth : (r == 3 ? Variant::kNoAppearance : Variant::kNoMotion);
    }
    const SynthVideo sv = synthesize(sc);
    char name[16];
    std::snprintf(name, sizeof name, "v%04d", i);
    pipeline::write_file_atomic(dir / (std::string(name) + ".fcv"), codec::encode_video(sv.video, cfg.encoder));
    LabeledVideo item{name, sv.label, (i / 10) % 2 == 0 ? "train" : "test", variant_name(sc.variant)};
    csv += item.name + "," + std::to_string(item.label) + "," + item.split + "," + item.variant + "\n";
    items.push_back(std::move(item));
  }
  pipeline::write_file_atomic(dir / "labels.csv", std::vector<std::uint8_t>(csv.begin(), csv.end()));
  return items;
}

std::vector<LabeledVideo> read_labels(const std::filesystem::path& dir) {
  const auto path = dir / "labels.csv";
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "missing labels file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kLabelsHeader) {
    throw Error(ErrorKind::kConfig, path.string() + ": header must be '" + kLabelsHeader + "'");
  }
  std::vector<LabeledVideo> items;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    LabeledVideo item;
    const bool ok = f.size() == 4 && !f[0].empty() && (f[2] == "train" || f[2] == "test") &&
                    std::from_chars(f[1].data(), f[1].data() + f[1].size(), item.label).ec == std::errc() &&
                    item.label >= 0;
    if (!ok) throw Error(ErrorKind::kConfig, path.string() + ": bad row " + std::to_string(row));
    item.name = f[0];
    item.split = f[2];
    item.variant = f[3];
    items.push_back(std::move(item));
  }
  if (items.empty()) throw Error(ErrorKind::kConfig, path.string() + ": no labeled videos");
  return items;
}

}  // namespace fcv::app
