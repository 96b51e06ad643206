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

#include "fcv/app/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "fcv/app/svg.hpp"
#include "fcv/codec/decoder.hpp"
#include "fcv/error.hpp"
#include "fcv/partial/partial_decode.hpp"
#include "fcv/simd/kernels.hpp"

namespace fcv::app {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PhaseTimes median_of(const std::vector<PhaseTimes>& runs) {
  auto field = [&](double PhaseTimes::*m) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(r.*m);
    return median(std::move(v));
  };
  PhaseTimes out;
  out.header = field(&PhaseTimes::header);
  out.entropy = field(&PhaseTimes::entropy);
  out.idct = field(&PhaseTimes::idct);
  out.motion = field(&PhaseTimes::motion);
  out.total = field(&PhaseTimes::total);
  out.bytes_read = runs.front().bytes_read;
  return out;
}

std::string fmt(double v, const char* f = "%.6f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Commas would break the CSV.
std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

}  // namespace

double median(std::vector<double> v) {
  if (v.empty()) throw_parameter("median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

MachineInfo machine_info() {
  MachineInfo m;
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) m.cpu = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  }
  if (m.cpu.empty()) m.cpu = "unknown";
#if defined(__clang__)
  m.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  m.compiler = "gcc " __VERSION__;
#else
  m.compiler = "unknown";
#endif
  m.simd = simd::level_name(simd::active_level());
  return m;
}

PhaseTimes time_full_decode(std::span<const std::uint8_t> stream) {
  codec::DecodeStats s;
  const codec::RawVideo v = codec::decode_video_full(stream, &s);
  if (v.frames.size() != s.frames) throw Error(ErrorKind::kCorruptStream, "decoder frame count mismatch");
  return {s.header_seconds, s.entropy_seconds, s.idct_seconds, s.motion_seconds, s.total_seconds, s.bytes_read};
}

PhaseTimes time_partial_decode(std::span<const std::uint8_t> stream) {
  PhaseTimes t;
  const auto t0 = Clock::now();
  partial::FeatureReader reader(stream, {true, true, false});
  t.header = seconds_since(t0);
  const auto t1 = Clock::now();
  std::size_t frames = 0;
  while (auto f = reader.next()) {
    if (!f->dct && !f->mv_field) throw Error(ErrorKind::kCorruptStream, "partial decode produced nothing");
    ++frames;
  }
  t.entropy = seconds_since(t1);
  t.total = seconds_since(t0);
  t.bytes_read = reader.stats().total();
  if (frames != reader.info().frames.size()) throw Error(ErrorKind::kCorruptStream, "partial decode skipped frames");
  return t;
}

BenchReport run_bench(std::span<const std::uint8_t> stream, int repeats) {
  if (repeats < 1) throw_parameter("bench repeats must be >= 1");
  const partial::StreamInfo info = partial::parse_headers(stream);
  BenchReport r;
  r.width = info.header.width;
  r.height = info.header.height;
  r.frames = info.frames.size();
  r.stream_bytes = stream.size();
  r.machine = machine_info();
  time_full_decode(stream);
  time_partial_decode(stream);
  for (int i = 0; i < repeats; ++i) {
    r.full.push_back(time_full_decode(stream));
    r.partial.push_back(time_partial_decode(stream));
  }
  r.full_median = median_of(r.full);
  r.partial_median = median_of(r.partial);
  r.ratio = r.full_median.total > 0.0 ? r.partial_median.total / r.full_median.total : 0.0;
  return r;
}

std::string bench_csv(const BenchReport& r) {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  auto row = [&](const char* mode, const std::string& sample, const PhaseTimes& t) {
    out += std::string("fcv-bench-1,") + mode + "," + sample + "," + fmt(t.header) + "," + fmt(t.entropy) + "," +
           fmt(t.idct) + "," + fmt(t.motion) + "," + fmt(t.total) + "," + std::to_string(t.bytes_read) + "," +
           std::to_string(r.frames) + "," + fmt(r.fps(t), "%.2f") + "," + fmt(r.ratio, "%.4f") + "," +
           fmt(kReferenceRatio, "%.2f") + "," + csv_safe(r.machine.cpu) + "," + csv_safe(r.machine.compiler) +
           "," + r.machine.simd + "," + std::to_string(r.machine.threads) + "\n";
  };
  for (std::size_t i = 0; i < r.full.size(); ++i) row("full", std::to_string(i), r.full[i]);
  for (std::size_t i = 0; i < r.partial.size(); ++i) row("partial", std::to_string(i), r.partial[i]);
  row("full", "median", r.full_median);
  row("partial", "median", r.partial_median);
  return out;
}

std::string bench_svg(const BenchReport& r) {
  constexpr double kLeft = 90, kTop = 50, kBarW = 380, kBarH = 36;
  Svg svg(560, 300);
  svg.text(280, 26, "Decode time per phase (median of " + std::to_string(r.full.size()) + ")", 15, "middle");
  const double scale = r.full_median.total > 0.0 ? kBarW / r.full_median.total : 0.0;
  const char* colors[] = {"#7f7f7f", "#1f77b4", "#d62728", "#2ca02c"};
  const char* names[] = {"header", "entropy", "idct", "motion"};
  auto bar = [&](double y, const std::string& label, const PhaseTimes& t) {
    svg.text(kLeft - 8, y + kBarH / 2 + 4, label, 12, "end");
    double x = kLeft;
    const double parts[] = {t.header, t.entropy, t.idct, t.motion};
    for (int i = 0; i < 4; ++i) {
      svg.rect(x, y, parts[i] * scale, kBarH, colors[i]);
      x += parts[i] * scale;
    }
    svg.text(kLeft + t.total * scale + 6, y + kBarH / 2 + 4, fmt(t.total * 1e3, "%.1f ms"), 11);
  };
  bar(kTop, "full", r.full_median);
  bar(kTop + 50, "partial", r.partial_median);
  for (int i = 0; i < 4; ++i) {
    svg.rect(kLeft + i * 95, kTop + 100, 12, 12, colors[i]);
    svg.text(kLeft + i * 95 + 16, kTop + 111, names[i], 11);
  }
  // Ratio axis from 0 to 1 with the reference and gate lines.
  const double ay = kTop + 170;
  svg.text(kLeft - 8, ay + 14, "ratio", 12, "end");
  svg.rect(kLeft, ay, r.ratio * kBarW, 20, "#1f77b4");
  svg.line(kLeft, ay + 20, kLeft + kBarW, ay + 20, "black");
  svg.line(kLeft + kReferenceRatio * kBarW, ay - 10, kLeft + kReferenceRatio * kBarW, ay + 30, "#2ca02c", true);
  svg.text(kLeft + kReferenceRatio * kBarW, ay + 44, "0.20 reference", 10, "middle");
  svg.line(kLeft + kRatioGate * kBarW, ay - 10, kLeft + kRatioGate * kBarW, ay + 30, "#d62728", true);
  svg.text(kLeft + kRatioGate * kBarW, ay + 44, "0.50 gate", 10, "middle");
  svg.text(kLeft + r.ratio * kBarW + 6, ay + 14, "measured " + fmt(r.ratio, "%.3f"), 11);
  return svg.str();
}

}  // namespace fcv::app
