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

#include "fcv/flops/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcv/error.hpp"

namespace fcv::flops {
namespace {

struct Shape {
  int h;
  int w;
  int c;
};

class Counter {
 public:
  explicit Counter(CostReport& report) : report_(report) {}

  Shape conv(const Shape& in, int out_c, int k, int s, int p, bool bias, const std::string& label) {
    const Shape out{window(in.h, k, s, p, label), window(in.w, k, s, p, label), out_c};
    const auto macs = static_cast<std::uint64_t>(out.h) * out.w * out.c * in.c * k * k;
    const auto params = static_cast<std::uint64_t>(in.c) * out_c * k * k + (bias ? out_c : 0);
    add(label, out, macs, params);
    return out;
  }
  void bn(const Shape& s, const std::string& label) { add(label, s, 0, 2ull * s.c); }
  Shape pool(const Shape& in, int k, int s, int p, const std::string& label) {
    const Shape out{window(in.h, k, s, p, label), window(in.w, k, s, p, label), in.c};
    add(label, out, 0, 0);
    return out;
  }
  Shape fc(const Shape& in, int out_c, bool bias, const std::string& label) {
    const auto n_in = static_cast<std::uint64_t>(in.h) * in.w * in.c;
    const Shape out{1, 1, out_c};
    add(label, out, n_in * out_c, n_in * out_c + (bias ? out_c : 0));
    return out;
  }

 private:
  static int window(int n, int k, int s, int p, const std::string& label) {
    const int out = (n + 2 * p - k) / s + 1;
    if (n + 2 * p < k || out < 1) {
      throw Error(ErrorKind::kSpec, label + ": kernel " + std::to_string(k) +
                                        " does not fit an input of " + std::to_string(n));
    }
    return out;
  }
  void add(const std::string& label, const Shape& s, std::uint64_t macs, std::uint64_t params) {
    report_.layers.push_back({label, s.h, s.w, s.c, macs, params});
    report_.macs += macs;
    report_.params += params;
  }

  CostReport& report_;
};

std::string name_of(const Layer& l) {
  return (l.line ? "line " + std::to_string(l.line) + " " : std::string()) + layer_kind_name(l.kind);
}

Shape bottleneck(Counter& n, Shape x, const Layer& l, const std::string& base) {
  const int width = l.out;
  const int out_c = width * 4;
  for (int b = 0; b < l.blocks; ++b) {
    const std::string at = base + "[" + std::to_string(b) + "].";
    const int s = b == 0 ? l.stride : 1;
    const int s1 = l.stride_on_3x3 ? 1 : s;
    const int s3 = l.stride_on_3x3 ? s : 1;
    Shape y = n.conv(x, width, 1, s1, 0, false, at + "conv1");
    n.bn(y, at + "bn1");
    y = n.conv(y, width, 3, s3, 1, false, at + "conv2");
    n.bn(y, at + "bn2");
    y = n.conv(y, out_c, 1, 1, 0, false, at + "conv3");
    n.bn(y, at + "bn3");
    if (b == 0 && (s != 1 || x.c != out_c)) {
      const Shape proj = n.conv(x, out_c, 1, s, 0, false, at + "proj");
      n.bn(proj, at + "proj_bn");
    }
    x = y;
  }
  return x;
}

Shape basic(Counter& n, Shape x, const Layer& l, const std::string& base) {
  for (int b = 0; b < l.blocks; ++b) {
    const std::string at = base + "[" + std::to_string(b) + "].";
    const int s = b == 0 ? l.stride : 1;
    Shape y = n.conv(x, l.out, 3, s, 1, false, at + "conv1");
    n.bn(y, at + "bn1");
    y = n.conv(y, l.out, 3, 1, 1, false, at + "conv2");
    n.bn(y, at + "bn2");
    if (b == 0 && (s != 1 || x.c != l.out)) {
      const Shape proj = n.conv(x, l.out, 1, s, 0, false, at + "proj");
      n.bn(proj, at + "proj_bn");
    }
    x = y;
  }
  return x;
}

}  // namespace

CostReport count_cost(const ArchSpec& spec) {
  if (spec.in_h < 1 || spec.in_w < 1 || spec.in_c < 1) {
    throw Error(ErrorKind::kSpec, "input dims must be positive");
  }
  CostReport report;
  Counter n(report);
  Shape x{spec.in_h, spec.in_w, spec.in_c};
  for (const Layer& l : spec.layers) {
    const std::string label = name_of(l);
    switch (l.kind) {
      case LayerKind::kConv:
        if (l.expect_in != 0 && l.expect_in != x.c) {
          throw Error(ErrorKind::kSpec, label + ": expects " + std::to_string(l.expect_in) +
                                            " input channels, previous layer gives " +
                                            std::to_string(x.c));
        }
        x = n.conv(x, l.out, l.kernel, l.stride, l.padding, l.bias, label);
        break;
      case LayerKind::kBatchNorm: n.bn(x, label); break;
      case LayerKind::kRelu: break;
      case LayerKind::kPool: x = n.pool(x, l.kernel, l.stride, l.padding, label); break;
      case LayerKind::kBottleneck: x = bottleneck(n, x, l, label); break;
      case LayerKind::kBasic: x = basic(n, x, l, label); break;
      case LayerKind::kGlobalPool: x = {1, 1, x.c}; break;
      case LayerKind::kFc: x = n.fc(x, l.out, l.bias, label); break;
    }
  }
  return report;
}

double average_gflops(double i_gflops, double p_gflops, double mix) {
  if (!(mix >= 0.0 && mix <= 1.0)) throw_parameter("frame mix must be in [0, 1]");
  return mix * i_gflops + (1.0 - mix) * p_gflops;
}

MixFit fit_frame_mix(std::span<const double> i_gflops, std::span<const double> avg_gflops) {
  if (i_gflops.size() != avg_gflops.size() || i_gflops.size() < 2) {
    throw_parameter("need at least two paired (i, average) rows");
  }
  const double n = static_cast<double>(i_gflops.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < i_gflops.size(); ++k) {
    mx += i_gflops[k];
    my += avg_gflops[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < i_gflops.size(); ++k) {
    sxx += (i_gflops[k] - mx) * (i_gflops[k] - mx);
    sxy += (i_gflops[k] - mx) * (avg_gflops[k] - my);
  }
  if (sxx == 0.0) throw_parameter("i costs must not all be equal");
  MixFit fit;
  fit.mix = sxy / sxx;
  if (!(fit.mix < 1.0)) throw_parameter("fitted mix is not below 1");
  fit.p_gflops = (my - fit.mix * mx) / (1.0 - fit.mix);
  for (std::size_t k = 0; k < i_gflops.size(); ++k) {
    const double r = std::abs(fit.mix * i_gflops[k] + (1.0 - fit.mix) * fit.p_gflops - avg_gflops[k]);
    fit.max_residual = std::max(fit.max_residual, r);
  }
  return fit;
}

}  // namespace fcv::flops
