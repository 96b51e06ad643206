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

#ifndef FCV_FBS_FBS_HPP_
#define FCV_FBS_FBS_HPP_

#include <array>

#include "fcv/partial/partial_decode.hpp"

// Frequency band selection: keep the lowest-frequency prefix (zigzag order)
// of every color channel.
namespace fcv::fbs {

using partial::CoeffTensor;

struct FbsConfig {
  int k = 64;  // bands kept per channel, 1..64
};

// Output has k bands per channel, values unchanged. k larger than the
// tensor's band count is a parameter error.
CoeffTensor select_bands(const CoeffTensor& t, FbsConfig cfg);

// Mean squared level per zigzag band over all blocks and channels. Bands the
// tensor does not carry read 0.
std::array<double, 64> band_energy(const CoeffTensor& t);

// Fraction of the total energy held by the first k bands.
double retained_energy(const std::array<double, 64>& energy, int k);

}  // namespace fcv::fbs

#endif  // FCV_FBS_FBS_HPP_
