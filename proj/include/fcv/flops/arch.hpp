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

#ifndef FCV_FLOPS_ARCH_HPP_
#define FCV_FLOPS_ARCH_HPP_

#include <filesystem>
#include <string>
#include <vector>

// Declarative network descriptions for cost accounting. Text form, one layer
// per line, '#' starts a comment:
//
//   name resnet50_rgb
//   input 224 224 3                      # height width channels
//   conv out=64 k=7 s=2 p=3 [bias=1] [in=3]
//   bn
//   relu
//   pool max|avg k=3 s=2 p=1
//   bottleneck width=64 blocks=3 s=1 [stride_on=1x1|3x3]
//   basic width=64 blocks=2 s=1
//   gpool
//   fc out=1000 [bias=0]
//
// `in=` on a conv asserts the incoming channel count. Residual groups expand
// to the usual conv/bn/relu sequences with a 1x1 projection on the first
// block when the shape changes.
namespace fcv::flops {

enum class LayerKind { kConv, kBatchNorm, kRelu, kPool, kBottleneck, kBasic, kGlobalPool, kFc };

struct Layer {
  LayerKind kind = LayerKind::kConv;
  int line = 0;  // source line, 0 when built in code
  int out = 0;   // conv/fc output channels; group base width
  int kernel = 1;
  int stride = 1;
  int padding = 0;
  int blocks = 0;        // residual groups
  int expect_in = 0;     // conv `in=`; 0 = unchecked
  bool bias = false;     // conv default off, fc default on
  bool max_pool = true;  // pool kind
  bool stride_on_3x3 = false;  // bottleneck variant (v1.5 style)

  bool operator==(const Layer&) const = default;
};

struct ArchSpec {
  std::string name;
  int in_h = 0;
  int in_w = 0;
  int in_c = 0;
  std::vector<Layer> layers;

  bool operator==(const ArchSpec&) const = default;
};

// Throws kSpec naming the offending line.
ArchSpec parse_arch(const std::string& text);
ArchSpec load_arch(const std::filesystem::path& path);
std::string to_text(const ArchSpec& spec);

const char* layer_kind_name(LayerKind kind);

}  // namespace fcv::flops

#endif  // FCV_FLOPS_ARCH_HPP_
