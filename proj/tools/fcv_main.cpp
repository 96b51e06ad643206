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

// fcv: command-line front end. Exit codes: 0 ok, 1 usage, 2 data error.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcv/app/bench.hpp"
#include "fcv/app/e2e.hpp"
#include "fcv/app/synth.hpp"
#include "fcv/app/y4m.hpp"
#include "fcv/codec/decoder.hpp"
#include "fcv/codec/encoder.hpp"
#include "fcv/error.hpp"
#include "fcv/flops/cost.hpp"
#include "fcv/fusion/classifier.hpp"
#include "fcv/partial/partial_decode.hpp"
#include "fcv/pipeline/export.hpp"
#include "fcv/pipeline/extract.hpp"

namespace fs = std::filesystem;
using namespace fcv;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Globals {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

void write_text(const fs::path& path, const std::string& s) {
  pipeline::write_file_atomic(path, std::vector<std::uint8_t>(s.begin(), s.end()));
}

std::string require_out(const Globals& g, const char* what) {
  if (g.out.empty()) throw CLI::ValidationError("--out", std::string("required: ") + what);
  return g.out;
}

// An existing directory as -o gets a default file name inside it.
fs::path file_out(const fs::path& out, const std::string& default_name) {
  return fs::is_directory(out) ? out / default_name : out;
}

// ---- synth ----
struct SynthArgs {
  std::string kind = "translate";
  int width = 64;
  int height = 64;
  int frames = 16;
  int dx = 3;
  int label = -1;
  int count = 0;
  int gop = 8;
  int quality = 4;
};

int cmd_synth(const Globals& g, const SynthArgs& a) {
  const auto kind = app::parse_synth_kind(a.kind);
  if (!kind) throw CLI::ValidationError("--kind", "unknown kind " + a.kind);
  const fs::path out = require_out(g, "output .y4m file or dataset directory");
  if (a.count > 0) {
    app::DatasetConfig dc;
    dc.kind = *kind;
    dc.count = a.count;
    dc.width = a.width;
    dc.height = a.height;
    dc.frames = a.frames;
    dc.seed = g.seed;
    dc.encoder.gop_size = a.gop;
    dc.encoder.quality = a.quality;
    const auto items = app::write_dataset(out, dc);
    std::printf("wrote %zu videos and labels.csv to %s\n", items.size(), out.c_str());
    return 0;
  }
  app::SynthConfig sc;
  sc.kind = *kind;
  sc.width = a.width;
  sc.height = a.height;
  sc.frames = a.frames;
  sc.seed = g.seed;
  sc.dx = a.dx;
  sc.label = a.label;
  const app::SynthVideo v = app::synthesize(sc);
  const fs::path file = file_out(out, std::string(app::synth_kind_name(*kind)) + "_s" + std::to_string(g.seed) + ".y4m");
  app::write_y4m(file, v.video);
  std::printf("%s: %dx%d, %zu frames%s\n", file.c_str(), v.video.width, v.video.height, v.video.frames.size(),
              v.label >= 0 ? (", label " + std::to_string(v.label)).c_str() : "");
  return 0;
}

// ---- encode / decode ----
int cmd_encode(const Globals& g, const std::string& input, const codec::EncoderConfig& ec) {
  const codec::RawVideo video = app::read_y4m(input);
  const auto bytes = codec::encode_video(video, ec);
  const fs::path out = file_out(require_out(g, "output stream"), fs::path(input).stem().string() + ".fcv");
  pipeline::write_file_atomic(out, bytes);
  std::printf("%s: %zu frames, %zu bytes (%.3f bits/pixel)\n", out.c_str(), video.frames.size(), bytes.size(),
              8.0 * static_cast<double>(bytes.size()) /
                  (static_cast<double>(video.width) * video.height * static_cast<double>(video.frames.size())));
  return 0;
}

int cmd_decode(const Globals& g, const std::string& input) {
  const auto bytes = pipeline::read_file(input);
  codec::DecodeStats s;
  const codec::RawVideo video = codec::decode_video_full(bytes, &s);
  if (!g.out.empty()) app::write_y4m(file_out(g.out, fs::path(input).stem().string() + ".y4m"), video);
  std::printf("decoded %zu frames %dx%d in %.3f s (header %.3f, entropy %.3f, idct %.3f, motion %.3f)\n",
              s.frames, video.width, video.height, s.total_seconds, s.header_seconds, s.entropy_seconds,
              s.idct_seconds, s.motion_seconds);
  return 0;
}

// ---- extract ----
struct ExtractArgs {
  std::vector<std::string> inputs;
  std::string stream = "freq";
  std::string mode = "test";
  int fbs = 64;
  int frames = 0;
  int target = 0;
  int resize = 0;
  std::string band_stats;
  bool negate_dx = false;
};

int cmd_extract(const Globals& g, const ExtractArgs& a) {
  pipeline::ExtractConfig ec;
  if (a.stream == "freq") {
    ec.kind = pipeline::StreamKind::kFrequency;
  } else if (a.stream == "mv") {
    ec.kind = pipeline::StreamKind::kTemporal;
  } else {
    throw CLI::ValidationError("--stream", "must be freq or mv");
  }
  if (a.mode != "train" && a.mode != "test") throw CLI::ValidationError("--mode", "must be train or test");
  ec.mode = a.mode == "train" ? pipeline::SampleMode::kTrain : pipeline::SampleMode::kTest;
  ec.fbs_k = a.fbs;
  ec.n_frames = a.frames;
  ec.target_h = ec.target_w = a.target;
  ec.resize_h = ec.resize_w = a.resize;
  ec.seed = g.seed;
  ec.negate_dx = a.negate_dx;
  if (!a.band_stats.empty()) ec.stats = pipeline::load_band_stats(a.band_stats);
  const fs::path out = require_out(g, "output directory");
  fs::create_directories(out);
  for (const std::string& in : a.inputs) {
    const auto bytes = pipeline::read_file(in);
    const pipeline::ExtractResult r = pipeline::extract_tensors(bytes, ec);
    const bool freq = ec.kind == pipeline::StreamKind::kFrequency;
    nlohmann::json meta;
    meta["video"] = fs::path(in).stem().string();
    meta["frames"] = r.frame_indices;
    meta["seed"] = g.seed;
    meta["mode"] = a.mode;
    meta["views_per_frame"] = ec.mode == pipeline::SampleMode::kTest ? 10 : 1;
    const pipeline::TensorFile tf = pipeline::stack(r.tensors, ec.kind, freq ? ec.fbs_k : 0, meta.dump());
    const fs::path file = out / (fs::path(in).stem().string() + "_" + a.stream + "_" + a.mode + ".fcvt");
    pipeline::write_tensor_file(file, tf);
    std::printf("%s: %zu tensors of %ux%ux%u\n", file.c_str(), r.tensors.size(), tf.dims[1], tf.dims[2],
                tf.dims[3]);
  }
  return 0;
}

// ---- inspect ----
int inspect_stream(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  partial::ReadStats rs;
  const partial::StreamInfo info = partial::parse_headers(bytes, &rs);
  const auto& h = info.header;
  std::printf("%s: stream %dx%d @ %d fps, gop %d, quality %d, %zu frames (%zu I, %zu P), %zu bytes\n",
              path.c_str(), h.width, h.height, h.fps, h.gop_size, h.quality, info.frames.size(),
              info.count(codec::FrameType::kI), info.count(codec::FrameType::kP), info.stream_bytes);
  for (const auto& f : info.frames) {
    std::printf("  frame %4u  %s  payload %8u bytes at %zu\n", f.frame_no, codec::frame_type_name(f.type),
                static_cast<unsigned>(f.payload_bytes), static_cast<std::size_t>(f.payload_offset));
  }
  return 0;
}

int cmd_inspect(const std::vector<std::string>& inputs, const std::string& band_stats_out) {
  if (!band_stats_out.empty()) {
    std::vector<partial::CoeffTensor> all;
    for (const std::string& in : inputs) {
      for (auto& f : partial::extract_all(pipeline::read_file(in), {true, false, false})) {
        if (f.dct) all.push_back(std::move(*f.dct));
      }
    }
    if (all.empty()) throw Error(ErrorKind::kEmptyStream, "no I-frames in the inputs");
    write_text(band_stats_out, pipeline::band_stats_json(pipeline::compute_band_stats(all)));
    std::printf("band stats over %zu I-frames -> %s\n", all.size(), band_stats_out.c_str());
    return 0;
  }
  for (const std::string& in : inputs) {
    const auto bytes = pipeline::read_file(in);
    const std::string magic(bytes.begin(), bytes.begin() + std::min<std::size_t>(4, bytes.size()));
    if (magic == "FCVT") {
      const pipeline::TensorFile tf = pipeline::deserialize(bytes);
      std::string dims;
      for (auto d : tf.dims) dims += (dims.empty() ? "" : "x") + std::to_string(d);
      std::printf("%s: tensor file, %s stream, fbs_k %d, dims %s, metadata %s\n", in.c_str(),
                  pipeline::stream_kind_name(tf.kind), tf.fbs_k, dims.c_str(), tf.metadata.c_str());
    } else if (magic == "FCVC") {
      const fusion::ToyClassifier c = fusion::deserialize_classifier(bytes);
      std::printf("%s: classifier checkpoint, %d classes, feature dim %d\n", in.c_str(), c.classes, c.dim);
    } else {
      inspect_stream(in, bytes);
    }
  }
  return 0;
}

// ---- bench ----
int cmd_bench(const Globals& g, const std::string& input, int repeats) {
  const auto bytes = pipeline::read_file(input);
  const app::BenchReport r = app::run_bench(bytes, repeats);
  std::printf("%dx%d, %zu frames, %zu bytes, %d repeats (simd %s)\n", r.width, r.height, r.frames, r.stream_bytes,
              repeats, r.machine.simd.c_str());
  std::printf("  full    %.4f s  (header %.4f, entropy %.4f, idct %.4f, motion %.4f)  %.1f frames/s\n",
              r.full_median.total, r.full_median.header, r.full_median.entropy, r.full_median.idct,
              r.full_median.motion, r.fps(r.full_median));
  std::printf("  partial %.4f s  (header %.4f, entropy %.4f)  %.1f frames/s\n", r.partial_median.total,
              r.partial_median.header, r.partial_median.entropy, r.fps(r.partial_median));
  std::printf("  ratio partial/full = %.3f (gate %.2f, reference %.2f)\n", r.ratio, app::kRatioGate,
              app::kReferenceRatio);
  if (!g.out.empty()) {
    fs::create_directories(g.out);
    write_text(fs::path(g.out) / "bench.csv", app::bench_csv(r));
    write_text(fs::path(g.out) / "bench.svg", app::bench_svg(r));
  }
  return 0;
}

// ---- flops ----
int cmd_flops(const std::vector<std::string>& archs, const std::string& p_arch, double mix, bool two_x) {
  std::optional<double> p_cost;
  if (!p_arch.empty()) p_cost = flops::count_cost(flops::load_arch(p_arch)).gflops(two_x);
  std::printf("%-22s %-14s %10s %12s", "network", "input", "GFLOPs", "params (M)");
  if (p_cost) std::printf(" %14s", "avg GFLOPs");
  std::printf("\n");
  for (const std::string& path : archs) {
    const flops::ArchSpec spec = flops::load_arch(path);
    const flops::CostReport c = flops::count_cost(spec);
    const std::string input = std::to_string(spec.in_h) + "x" + std::to_string(spec.in_w) + "x" +
                              std::to_string(spec.in_c);
    std::printf("%-22s %-14s %10.3f %12.3f", spec.name.c_str(), input.c_str(), c.gflops(two_x), c.mparams());
    if (p_cost) std::printf(" %14.3f", flops::average_gflops(c.gflops(two_x), *p_cost, mix));
    std::printf("\n");
  }
  if (p_cost) std::printf("P-frame network %s: %.3f GFLOPs, I-frame share %.3f\n", p_arch.c_str(), *p_cost, mix);
  return 0;
}

// ---- demo ----
std::string log_csv(const fusion::TrainLog& f, const fusion::TrainLog& t) {
  std::string out = "epoch,freq_loss,freq_lr,temp_loss,temp_lr\n";
  for (std::size_t e = 0; e < std::max(f.epoch_loss.size(), t.epoch_loss.size()); ++e) {
    auto cell = [&](const std::vector<double>& v) { return e < v.size() ? std::to_string(v[e]) : std::string(); };
    out += std::to_string(e) + "," + cell(f.epoch_loss) + "," + cell(f.epoch_lr) + "," + cell(t.epoch_loss) + "," +
           cell(t.epoch_lr) + "\n";
  }
  return out;
}

int cmd_demo_train(const Globals& g, const std::string& dataset, app::E2eConfig cfg) {
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  app::TrainLogs logs;
  const app::Models m = app::train_models(dataset, cfg, &logs);
  const fs::path out = require_out(g, "model directory");
  app::save_models(out, m);
  write_text(out / "train_log.csv", log_csv(logs.freq, logs.temp));
  std::printf("trained: frequency final loss %.4f, temporal final loss %.4f -> %s\n",
              logs.freq.epoch_loss.empty() ? 0.0 : logs.freq.epoch_loss.back(),
              logs.temp.epoch_loss.empty() ? 0.0 : logs.temp.epoch_loss.back(), out.c_str());
  return 0;
}

int cmd_demo_eval(const Globals& g, const std::string& dataset, const std::string& models_dir,
                  const std::string& weights, app::E2eConfig cfg) {
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  const auto comma = weights.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(weights);
    cfg.weights = {std::stod(weights.substr(0, comma)), std::stod(weights.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--weights", "expected two numbers like 2,1");
  }
  const app::Models m = app::load_models(models_dir.empty() ? require_out(g, "model directory") : models_dir);
  const app::E2eMetrics r = app::evaluate_models(dataset, m, cfg);
  std::printf("%s", app::metrics_csv(r).c_str());
  if (!g.out.empty()) {
    fs::create_directories(g.out);
    write_text(fs::path(g.out) / "metrics.csv", app::metrics_csv(r));
    write_text(fs::path(g.out) / "predictions.csv", app::predictions_csv(r));
    write_text(fs::path(g.out) / "metrics.svg", app::metrics_svg(r));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"fcv: compressed-domain video features"};
  cli.require_subcommand(1);
  // Subcommands inherit this, so global flags may follow the subcommand.
  cli.fallthrough();
  Globals g;
  cli.add_option("--seed", g.seed, "random seed")->capture_default_str();
  cli.add_option("--threads", g.threads, "worker threads (benchmarks always use one)")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  cli.add_option("-o,--out", g.out, "output file or directory");

  SynthArgs sa;
  auto* synth = cli.add_subcommand("synth", "write a synthetic fixture (.y4m) or a labeled dataset");
  synth->add_option("--kind", sa.kind, "static, translate, noise, two-class-motion, mixed")->capture_default_str();
  synth->add_option("--width", sa.width)->capture_default_str();
  synth->add_option("--height", sa.height)->capture_default_str();
  synth->add_option("--frames", sa.frames)->capture_default_str();
  synth->add_option("--dx", sa.dx, "translate: px per frame")->capture_default_str();
  synth->add_option("--label", sa.label, "0 or 1; -1 draws from the seed")->capture_default_str();
  synth->add_option("--count", sa.count, "write an encoded dataset of this many videos");
  synth->add_option("--gop", sa.gop, "dataset GOP size")->capture_default_str();
  synth->add_option("--quality", sa.quality, "dataset quantizer step")->capture_default_str();

  std::string enc_in;
  codec::EncoderConfig ec;
  auto* encode = cli.add_subcommand("encode", "encode a .y4m video");
  encode->add_option("input", enc_in)->required()->check(CLI::ExistingFile);
  encode->add_option("--gop", ec.gop_size)->capture_default_str();
  encode->add_option("--quality,-q", ec.quality)->capture_default_str();
  encode->add_option("--search-range", ec.search_range)->capture_default_str();

  std::string dec_in;
  auto* decode = cli.add_subcommand("decode", "fully decode a stream (optionally to .y4m)");
  decode->add_option("input", dec_in)->required()->check(CLI::ExistingFile);

  ExtractArgs xa;
  auto* extract = cli.add_subcommand("extract", "partial-decode streams into tensor files");
  extract->add_option("inputs", xa.inputs)->required()->check(CLI::ExistingFile);
  extract->add_option("--stream", xa.stream, "freq or mv")->capture_default_str();
  extract->add_option("--mode", xa.mode, "train or test")->capture_default_str();
  extract->add_option("--fbs", xa.fbs, "bands kept per channel")->capture_default_str();
  extract->add_option("--frames", xa.frames, "frames sampled (0: 3 train, 25 test)");
  extract->add_option("--target", xa.target, "crop side (0: 28 blocks / 224 px)");
  extract->add_option("--resize", xa.resize, "temporal: resize the motion grid first");
  extract->add_option("--band-stats", xa.band_stats, "standardize with this band stats file")
      ->check(CLI::ExistingFile);
  extract->add_flag("--negate-dx", xa.negate_dx, "flip also negates horizontal motion");

  std::vector<std::string> insp_in;
  std::string band_stats_out;
  auto* inspect = cli.add_subcommand("inspect", "describe streams, tensor files or checkpoints");
  inspect->add_option("inputs", insp_in)->required()->check(CLI::ExistingFile);
  inspect->add_option("--band-stats", band_stats_out, "write per-band mean/stddev of all I-frames to this file");

  std::string bench_in;
  int repeats = 5;
  auto* bench = cli.add_subcommand("bench", "time full against partial decoding");
  bench->add_option("input", bench_in)->required()->check(CLI::ExistingFile);
  bench->add_option("--repeats", repeats)->check(CLI::Range(1, 1000))->capture_default_str();

  std::vector<std::string> archs;
  std::string p_arch;
  double mix = 0.25;
  bool two_x = false;
  auto* flops_cmd = cli.add_subcommand("flops", "count MACs and parameters of architecture configs");
  flops_cmd->add_option("--arch", archs, "architecture file (repeatable)")->required()->check(CLI::ExistingFile);
  flops_cmd->add_option("--p-arch", p_arch, "P-frame network for the per-frame average")->check(CLI::ExistingFile);
  flops_cmd->add_option("--mix", mix, "share of I-frames")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  flops_cmd->add_flag("--two-x", two_x, "count multiply and add separately");

  std::string dataset;
  app::E2eConfig e2e;
  auto add_common = [&](CLI::App* c) {
    c->add_option("dataset", dataset, "directory with labels.csv")->required()->check(CLI::ExistingDirectory);
    c->add_option("--fbs", e2e.fbs_k)->capture_default_str();
    c->add_option("--freq-target", e2e.freq_target)->capture_default_str();
    c->add_option("--temp-target", e2e.temp_target)->capture_default_str();
  };
  auto* demo_train = cli.add_subcommand("demo-train", "train both toy stream classifiers");
  add_common(demo_train);
  demo_train->add_option("--epochs", e2e.freq_train.epochs)->capture_default_str();
  demo_train->add_option("--lr", e2e.freq_train.lr)->capture_default_str();
  demo_train->add_option("--rounds", e2e.train_rounds, "augmented passes per video")->capture_default_str();

  std::string models_dir;
  std::string weights = "2,1";
  auto* demo_eval = cli.add_subcommand("demo-eval", "score the test split and fuse the streams");
  add_common(demo_eval);
  demo_eval->add_option("--models", models_dir, "directory written by demo-train")->check(CLI::ExistingDirectory);
  demo_eval->add_option("--weights", weights, "fusion weights freq,temp")->capture_default_str();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(g, sa);
    if (*encode) return cmd_encode(g, enc_in, ec);
    if (*decode) return cmd_decode(g, dec_in);
    if (*extract) return cmd_extract(g, xa);
    if (*inspect) return cmd_inspect(insp_in, band_stats_out);
    if (*bench) return cmd_bench(g, bench_in, repeats);
    if (*flops_cmd) return cmd_flops(archs, p_arch, mix, two_x);
    e2e.temp_train.epochs = e2e.freq_train.epochs;
    e2e.temp_train.lr = e2e.freq_train.lr;
    if (*demo_train) return cmd_demo_train(g, dataset, e2e);
    if (*demo_eval) return cmd_demo_eval(g, dataset, models_dir, weights, e2e);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == ErrorKind::kParameter ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
