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

// Acceptance run: one PASS/FAIL line per headline criterion. Exits non-zero
// if any check fails. Optional argument: output directory for the bench CSV
// and plot and the scratch datasets (default ./acceptance_out).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "fcv/app/bench.hpp"
#include "fcv/app/e2e.hpp"
#include "fcv/app/synth.hpp"
#include "fcv/bitio/huffman.hpp"
#include "fcv/bitio/rle.hpp"
#include "fcv/codec/dct.hpp"
#include "fcv/codec/decoder.hpp"
#include "fcv/codec/encoder.hpp"
#include "fcv/flops/arch.hpp"
#include "fcv/flops/cost.hpp"
#include "fcv/fusion/classifier.hpp"
#include "fcv/partial/partial_decode.hpp"
#include "fcv/pipeline/augment.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/pipeline/extract.hpp"
#include "fcv/rng.hpp"
#include "fcv/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace fcv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

codec::RawVideo video(app::SynthKind kind, int w, int h, int frames, std::uint64_t seed) {
  app::SynthConfig c;
  c.kind = kind;
  c.width = w;
  c.height = h;
  c.frames = frames;
  c.seed = seed;
  return app::synthesize(c).video;
}

codec::EncoderConfig enc(int gop, int q) {
  codec::EncoderConfig c;
  c.gop_size = gop;
  c.quality = q;
  return c;
}

struct Fixture {
  const char* name;
  codec::RawVideo video;
};

std::vector<Fixture> fixtures() {
  return {
      {"static", video(app::SynthKind::kStatic, 64, 48, 8, 1)},
      {"translate", video(app::SynthKind::kTranslate, 96, 64, 12, 2)},
      {"noise", video(app::SynthKind::kNoise, 48, 32, 6, 3)},
      {"two-class-motion", video(app::SynthKind::kTwoClassMotion, 64, 64, 12, 4)},
  };
}

bool prefix_free(const bitio::HuffmanTable& t) {
  std::vector<std::pair<std::uint32_t, int>> codes;
  for (std::size_t s = 0; s < t.alphabet_size(); ++s) {
    if (t.length(static_cast<bitio::Symbol>(s)) > 0) {
      codes.emplace_back(t.code(static_cast<bitio::Symbol>(s)), t.length(static_cast<bitio::Symbol>(s)));
    }
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = 0; j < codes.size(); ++j) {
      if (i == j) continue;
      const auto [ci, li] = codes[i];
      const auto [cj, lj] = codes[j];
      if (li <= lj && (cj >> (lj - li)) == ci) return false;
    }
  }
  return true;
}

Outcome check_entropy() {
  Rng rng(1);
  int huff_ok = 0;
  int tables = 0;
  int tables_ok = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::uint64_t> f(1 + rng.below(256));
    for (auto& v : f) v = rng.bernoulli(0.3) ? 0 : 1 + rng.below(1000);
    f[rng.below(f.size())] += 1;
    const auto t = bitio::build_huffman(f);
    std::vector<bitio::Symbol> syms;
    for (int i = 0; i < 64; ++i) {
      const auto s = static_cast<bitio::Symbol>(rng.below(f.size()));
      if (f[s] > 0) syms.push_back(s);
    }
    huff_ok += bitio::huffman_decode(t, bitio::huffman_encode(t, syms), syms.size()) == syms;
    if (trial % 10 == 0) {
      ++tables;
      tables_ok += prefix_free(t);
    }
  }
  int rle_ok = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::array<std::int32_t, 64> b{};
    const double density = rng.uniform();
    for (auto& v : b) {
      if (rng.bernoulli(density)) v = rng.between(-2047, 2047);
    }
    rle_ok += bitio::rle_decode(bitio::rle_encode(b)) == b;
  }
  // Every table the encoder actually ships.
  for (const auto& fx : fixtures()) {
    const auto info = partial::parse_headers(codec::encode_video(fx.video, enc(4, 2)));
    for (const auto& t : info.tables.tables) {
      if (t.empty()) continue;
      ++tables;
      tables_ok += prefix_free(t);
    }
  }
  return {huff_ok == 10000 && rle_ok == 10000 && tables_ok == tables,
          fmt("huffman %d/10000, rle %d/10000, prefix-free tables %d/%d", huff_ok, rle_ok, tables_ok, tables)};
}

Outcome check_fidelity() {
  int worst = 0;
  for (const auto& fx : fixtures()) {
    for (int gop : {1, 8}) {
      const auto out = codec::decode_video_full(codec::encode_video(fx.video, enc(gop, 1)));
      for (std::size_t i = 0; i < out.frames.size(); ++i) {
        worst = std::max(worst, codec::max_abs_diff(out.frames[i], fx.video.frames[i]));
      }
    }
  }
  const auto tr = video(app::SynthKind::kTranslate, 96, 64, 12, 2);
  double min_low_q = INFINITY;
  double prev = INFINITY;
  bool monotone = true;
  std::string curve;
  for (int q : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32}) {
    const double p = codec::psnr(codec::decode_video_full(codec::encode_video(tr, enc(12, q))), tr);
    if (q <= 4) min_low_q = std::min(min_low_q, p);
    monotone = monotone && p <= prev;
    prev = p;
    curve += fmt("%s%d:%.1f", curve.empty() ? "" : " ", q, p);
  }
  return {worst <= 2 && min_low_q >= 30.0 && monotone,
          fmt("q=1 max error %d, min PSNR(q<=4) %.2f dB, monotone %s [%s]", worst, min_low_q,
              monotone ? "yes" : "no", curve.c_str())};
}

Outcome check_exactness() {
  std::size_t frames = 0;
  std::size_t equal = 0;
  codec::OpCounters ops;
  for (const auto& fx : fixtures()) {
    for (int gop : {1, 4, 12}) {
      codec::EncodeTrace trace;
      const auto s = codec::encode_video(fx.video, enc(gop, 4), &trace);
      const int cols = fx.video.width / 16;
      const int rows = fx.video.height / 16;
      // The encoder reconstructs too; count only the extraction.
      codec::reset_op_counters();
      const auto feats = partial::extract_all(s);
      ops.idct_calls += codec::op_counters().idct_calls;
      ops.pixel_writes += codec::op_counters().pixel_writes;
      for (std::size_t i = 0; i < feats.size(); ++i) {
        ++frames;
        const auto& want = trace.frames[i];
        if (want.type == codec::FrameType::kI) {
          equal += feats[i].dct && *feats[i].dct == partial::coeff_tensor(want, cols, rows);
        } else {
          equal += feats[i].mv_field && *feats[i].mv_field == want.field;
        }
      }
    }
  }
  return {frames > 0 && equal == frames && ops.idct_calls == 0 && ops.pixel_writes == 0,
          fmt("%zu/%zu frames bit-identical, idct calls %llu, pixel writes %llu", equal, frames,
              static_cast<unsigned long long>(ops.idct_calls), static_cast<unsigned long long>(ops.pixel_writes))};
}

Outcome check_speed(const fs::path& out) {
  const auto v = video(app::SynthKind::kTranslate, 320, 240, 300, 7);
  const auto s = codec::encode_video(v, enc(12, 4));
  const app::BenchReport r = app::run_bench(s, 5);
  const std::string csv = app::bench_csv(r);
  pipeline::write_file_atomic(out / "bench.csv", std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
  const std::string svg = app::bench_svg(r);
  pipeline::write_file_atomic(out / "bench.svg", std::span(reinterpret_cast<const std::uint8_t*>(svg.data()), svg.size()));
  return {r.ratio <= app::kRatioGate,
          fmt("partial/full = %.3f (gate %.2f, reference %.2f); full %.3f s, partial %.3f s, %s kernels; csv %s",
              r.ratio, app::kRatioGate, app::kReferenceRatio, r.full_median.total, r.partial_median.total,
              r.machine.simd.c_str(), (out / "bench.csv").c_str())};
}

flops::CostReport cost_of(const char* name) {
  return flops::count_cost(flops::load_arch(fs::path(FCV_CFG_DIR) / (std::string(name) + ".arch")));
}

Outcome check_table3() {
  struct Row {
    const char* arch;
    double g;
    double m;
    double tol;
  };
  const Row rows[] = {{"resnet50_rgb", 3.86, 25.6, 0.03},
                      {"resnet50_dct", 5.40, 28.4, 0.05},
                      {"resnet50_fbs32", 3.68, 26.2, 0.05},
                      {"resnet50_fbs16", 3.18, 25.6, 0.05}};
  bool ok = true;
  std::string detail;
  std::vector<double> g;
  for (const Row& r : rows) {
    const auto c = cost_of(r.arch);
    const bool row_ok = std::abs(c.gflops() - r.g) <= r.tol * r.g && std::abs(c.mparams() - r.m) <= r.tol * r.m;
    ok = ok && row_ok;
    g.push_back(c.gflops());
    detail += fmt("%s%s %.3f/%.2fM", detail.empty() ? "" : ", ", r.arch + 9, c.gflops(), c.mparams());
  }
  const bool ordered = g[1] > g[2] && g[2] > g[3];
  return {ok && ordered, detail + (ordered ? ", dct > fbs32 > fbs16" : ", ORDER BROKEN")};
}

Outcome check_table4() {
  const std::array<double, 3> i = {5.40, 3.68, 3.18};
  const std::array<double, 3> avg = {2.7, 2.3, 2.1};
  const flops::MixFit fit = flops::fit_frame_mix(i, avg);
  bool ok = fit.max_residual <= 0.1;
  std::string detail = fmt("fit mix %.4f, p %.3f, residual %.3f; at mix 0.25 with own costs:", fit.mix,
                           fit.p_gflops, fit.max_residual);
  const double p = cost_of("resnet18_mv").gflops();
  const char* archs[] = {"resnet50_dct", "resnet50_fbs32", "resnet50_fbs16"};
  for (int k = 0; k < 3; ++k) {
    const double a = flops::average_gflops(cost_of(archs[k]).gflops(), p, 0.25);
    const double b = flops::average_gflops(i[k], fit.p_gflops, fit.mix);
    ok = ok && std::abs(a - avg[k]) <= 0.1 && std::abs(b - avg[k]) <= 0.1;
    detail += fmt(" %.2f", a);
  }
  return {ok, detail + fmt(" (p = %.3f)", p)};
}

Outcome check_counts() {
  std::size_t videos = 0;
  std::size_t ok = 0;
  for (const auto& fx : fixtures()) {
    const auto s = codec::encode_video(fx.video, enc(4, 4));
    for (auto kind : {pipeline::StreamKind::kFrequency, pipeline::StreamKind::kTemporal}) {
      pipeline::ExtractConfig c;
      c.kind = kind;
      c.fbs_k = 16;
      const int side = std::min(fx.video.width, fx.video.height);
      c.target_h = c.target_w = kind == pipeline::StreamKind::kFrequency ? side / 8 - 2 : side - 8;
      ++videos;
      ok += pipeline::extract_tensors(s, c).tensors.size() == 250;
    }
  }
  return {ok == videos, fmt("%zu/%zu (video, stream) pairs gave 250 test tensors", ok, videos)};
}

// Decoded 8-bit pixels of one channel, built with the codec's own
// dequantize / IDCT / store path.
std::vector<std::uint8_t> channel_pixels(const partial::CoeffTensor& t, int c) {
  const int w = t.w_blocks * 8;
  std::vector<std::uint8_t> px(static_cast<std::size_t>(t.h_blocks) * 8 * w);
  for (int by = 0; by < t.h_blocks; ++by) {
    for (int bx = 0; bx < t.w_blocks; ++bx) {
      codec::IntBlock lv{};
      for (int b = 0; b < 64; ++b) lv[b] = t.at(by, bx, c, b);
      const codec::RealBlock samples = codec::reconstruct_block(lv, {1});
      simd::kernels().store8x8(samples.data(), px.data() + by * 8 * w + bx * 8, w);
    }
  }
  return px;
}

Outcome check_flip() {
  int frames = 0;
  int exact = 0;
  for (std::uint64_t seed = 0; frames < 100; ++seed) {
    const auto kind = seed % 2 ? app::SynthKind::kNoise : app::SynthKind::kTwoClassMotion;
    const auto s = codec::encode_video(video(kind, 48, 32, 4, 100 + seed), enc(1, 1));
    for (const auto& f : partial::extract_all(s, {true, false, false})) {
      if (frames == 100) break;
      ++frames;
      const auto flipped = pipeline::hflip_dct(*f.dct);
      const int w = f.dct->w_blocks * 8;
      bool same = true;
      for (int c = 0; c < 3 && same; ++c) {
        const auto a = channel_pixels(*f.dct, c);
        const auto b = channel_pixels(flipped, c);
        for (std::size_t i = 0; i < a.size() && same; ++i) {
          same = b[(i / w) * w + (w - 1 - i % w)] == a[i];
        }
      }
      exact += same;
    }
  }
  return {exact == frames, fmt("%d/%d random q=1 I-frames: IDCT(flip(t)) == mirror(IDCT(t)) bit-exactly", exact, frames)};
}

Outcome check_e2e(const fs::path& out) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  app::E2eConfig cfg;
  cfg.threads = static_cast<int>(std::min(hw, 8u));

  app::DatasetConfig two;
  two.kind = app::SynthKind::kTwoClassMotion;
  two.count = 200;
  two.seed = 1;
  const fs::path two_dir = out / "two_class_motion";
  fs::remove_all(two_dir);
  app::write_dataset(two_dir, two);
  const auto m1 = app::run_e2e(two_dir, cfg);

  app::DatasetConfig mixed = two;
  mixed.kind = app::SynthKind::kMixed;
  mixed.seed = 7;
  const fs::path mixed_dir = out / "mixed";
  fs::remove_all(mixed_dir);
  app::write_dataset(mixed_dir, mixed);
  const auto m2 = app::run_e2e(mixed_dir, cfg);

  // Gradient check on random points.
  Rng rng(3);
  double worst = 0.0;
  for (int point = 0; point < 10; ++point) {
    fusion::ToyClassifier clf(3, 5);
    for (double& w : clf.weights) w = rng.normal();
    for (double& w : clf.bias) w = rng.normal();
    std::vector<fusion::Features> xs(12, fusion::Features(5));
    std::vector<int> ys(12);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (double& x : xs[i]) x = 2.0 * rng.normal();
      ys[i] = static_cast<int>(i % 3);
    }
    const auto g = fusion::loss_and_gradient(clf, xs, ys);
    const double h = 1e-5;
    auto probe = [&](double& param, double analytic) {
      const double keep = param;
      param = keep + h;
      const double up = fusion::loss_and_gradient(clf, xs, ys).loss;
      param = keep - h;
      const double down = fusion::loss_and_gradient(clf, xs, ys).loss;
      param = keep;
      const double numeric = (up - down) / (2 * h);
      worst = std::max(worst, std::abs(analytic - numeric) / std::max(1e-6, std::abs(analytic) + std::abs(numeric)));
    };
    for (std::size_t i = 0; i < clf.weights.size(); ++i) probe(clf.weights[i], g.d_weights[i]);
    for (std::size_t i = 0; i < clf.bias.size(); ++i) probe(clf.bias[i], g.d_bias[i]);
  }

  const double best_single = std::max(m2.freq.accuracy, m2.temp.accuracy);
  const bool ok = m1.temp.accuracy >= 0.9 && m2.fused.accuracy >= best_single - 0.02 && worst <= 1e-4;
  return {ok, fmt("two-class-motion (%zu videos) temporal %.3f; mixed (%zu videos) freq %.3f temporal %.3f fused "
                  "%.3f; gradient rel. error %.1e",
                  m1.train_videos + m1.test_videos, m1.temp.accuracy, m2.train_videos + m2.test_videos,
                  m2.freq.accuracy, m2.temp.accuracy, m2.fused.accuracy, worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  fs::create_directories(out);

  const std::vector<Check> checks = {
      {"entropy coding soundness", 10, check_entropy},
      {"codec fidelity", 60, check_fidelity},
      {"partial-decode exactness", 30, check_exactness},
      {"partial-decode speed", 120, [&] { return check_speed(out); }},
      {"FLOPs/params table (ResNet-50 variants)", 5, check_table3},
      {"average GFLOPs frame-mix reconstruction", 1, check_table4},
      {"pipeline counts (250 tensors per video per stream)", 30, check_counts},
      {"DCT-domain flip correctness", 30, check_flip},
      {"toy end-to-end", 300, [&] { return check_e2e(out); }},
  };

  int failed = 0;
  for (const Check& c : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", c.budget_s);
    }
    failed += !o.pass;
    std::printf("%s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
