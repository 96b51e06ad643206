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

#ifndef FCV_FLOPS_COST_HPP_
#define FCV_FLOPS_COST_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fcv/flops/arch.hpp"

namespace fcv::flops {

// Counting convention: one multiply-accumulate = one FLOP. Convolutions cost
// out_h * out_w * out_c * in_c * k^2, fully connected layers in * out;
// batchnorm, activations and pooling cost nothing. Parameters include conv
// and fc weights, enabled biases, and two affine values per batchnorm channel.
struct LayerCost {
  std::string label;  // e.g. "line 7 conv" or "line 9 bottleneck[2].conv2"
  int out_h = 0;
  int out_w = 0;
  int out_c = 0;
  std::uint64_t macs = 0;
  std::uint64_t params = 0;
};

struct CostReport {
  std::uint64_t macs = 0;
  std::uint64_t params = 0;
  std::vector<LayerCost> layers;

  // macs * 1e-9; two_x counts multiply and add separately.
  double gflops(bool two_x = false) const { return (two_x ? 2.0 : 1.0) * static_cast<double>(macs) * 1e-9; }
  double mparams() const { return static_cast<double>(params) * 1e-6; }
};

// Throws kSpec naming the layer when shapes do not fit.
CostReport count_cost(const ArchSpec& spec);

// Average cost per processed frame when a fraction `mix` of them are I-frames
// (frequency network) and the rest P-frames (temporal network).
double average_gflops(double i_gflops, double p_gflops, double mix);

// Least-squares fit of avg_k = mix * i_k + (1 - mix) * p over paired rows
// (linear in mix and q = (1 - mix) * p). Needs two distinct i values.
struct MixFit {
  double mix = 0.0;
  double p_gflops = 0.0;
  double max_residual = 0.0;
};
MixFit fit_frame_mix(std::span<const double> i_gflops, std::span<const double> avg_gflops);

}  // namespace fcv::flops

#endif  // FCV_FLOPS_COST_HPP_
