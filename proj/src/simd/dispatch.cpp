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

#include <atomic>
#include <cstdlib>
#include <string>

#include "fcv/error.hpp"
#include "fcv/simd/kernels.hpp"

namespace fcv::simd {
namespace {

Level initial_level() {
  if (const char* env = std::getenv("FCV_SIMD")) {
    if (auto level = parse_level(env); level && is_supported(*level)) return *level;
  }
  return best_available();
}

std::atomic<Level>& level_slot() {
  static std::atomic<Level> slot{initial_level()};
  return slot;
}

}  // namespace

const char* level_name(Level level) {
  switch (level) {
    case Level::kScalar: return "scalar";
    case Level::kAvx2: return "avx2";
  }
  return "unknown";
}

std::optional<Level> parse_level(std::string_view name) {
  if (name == "scalar") return Level::kScalar;
  if (name == "avx2") return Level::kAvx2;
  return std::nullopt;
}

bool is_supported(Level level) {
  switch (level) {
    case Level::kScalar:
      return true;
    case Level::kAvx2:
#if defined(FCV_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Level best_available() {
  return is_supported(Level::kAvx2) ? Level::kAvx2 : Level::kScalar;
}

Level active_level() { return level_slot().load(std::memory_order_relaxed); }

void set_active_level(Level level) {
  if (!is_supported(level)) {
    throw_parameter(std::string("SIMD level not supported on this machine: ") +
                    level_name(level));
  }
  level_slot().store(level, std::memory_order_relaxed);
}

const KernelTable& kernels(Level level) {
#if defined(FCV_HAVE_AVX2)
  if (level == Level::kAvx2 && is_supported(level)) return detail::avx2_table();
#endif
  (void)level;
  return detail::scalar_table();
}

const KernelTable& kernels() { return kernels(active_level()); }

}  // namespace fcv::simd
