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

#ifndef FCV_APP_BENCH_HPP_
#define FCV_APP_BENCH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Full decode against partial decode (entropy decode only) on one stream.
namespace fcv::app {

struct PhaseTimes {
  double header = 0.0;
  double entropy = 0.0;
  double idct = 0.0;    // partial decode: always 0, the phase never runs
  double motion = 0.0;  // partial decode: always 0
  double total = 0.0;
  std::uint64_t bytes_read = 0;
};

struct MachineInfo {
  std::string cpu;
  std::string compiler;
  std::string simd;
  int threads = 1;
};
MachineInfo machine_info();

// Reference line for the plots: partial decode at under a fifth of the
// full decode cost.
inline constexpr double kReferenceRatio = 0.20;
// Acceptance gate for the measured ratio.
inline constexpr double kRatioGate = 0.50;

struct BenchReport {
  int width = 0;
  int height = 0;
  std::size_t frames = 0;
  std::size_t stream_bytes = 0;
  std::vector<PhaseTimes> full;     // one per repeat
  std::vector<PhaseTimes> partial;  // one per repeat
  PhaseTimes full_median;           // per-field medians
  PhaseTimes partial_median;
  double ratio = 0.0;  // partial_median.total / full_median.total
  MachineInfo machine;

  double fps(const PhaseTimes& t) const { return t.total > 0.0 ? static_cast<double>(frames) / t.total : 0.0; }
};

PhaseTimes time_full_decode(std::span<const std::uint8_t> stream);
PhaseTimes time_partial_decode(std::span<const std::uint8_t> stream);

// Alternates full and partial runs `repeats` times (after one untimed
// warm-up of each) and takes medians. repeats >= 1.
BenchReport run_bench(std::span<const std::uint8_t> stream, int repeats);

double median(std::vector<double> v);

inline constexpr const char* kBenchCsvHeader =
    "schema,mode,sample,header_s,entropy_s,idct_s,motion_s,total_s,bytes_read,frames,frames_per_s,"
    "ratio,reference_ratio,cpu,compiler,simd,threads";
std::string bench_csv(const BenchReport& report);
// Stacked phase bars for both decoders plus the measured ratio against the
// 0.20 reference and the 0.50 gate.
std::string bench_svg(const BenchReport& report);

}  // namespace fcv::app

#endif  // FCV_APP_BENCH_HPP_
