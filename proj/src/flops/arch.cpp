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

#include "fcv/flops/arch.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "fcv/error.hpp"
#include "fcv/pipeline/export.hpp"

namespace fcv::flops {
namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorKind::kSpec, "line " + std::to_string(line) + ": " + what);
}

int to_int(const std::string& s, int line, const std::string& key) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) fail(line, "bad integer for " + key + ": '" + s + "'");
  return v;
}

// key=value options of one line; every key must be consumed.
class Options {
 public:
  Options(const std::vector<std::string>& tokens, std::size_t first, int line) : line_(line) {
    for (std::size_t i = first; i < tokens.size(); ++i) {
      const auto eq = tokens[i].find('=');
      if (eq == std::string::npos) fail(line, "expected key=value, got '" + tokens[i] + "'");
      values_[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
  }

  int get(const std::string& key, int fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const int v = to_int(it->second, line_, key);
    values_.erase(it);
    return v;
  }
  int require(const std::string& key) {
    if (!values_.count(key)) fail(line_, "missing " + key + "=");
    return get(key, 0);
  }
  std::string get_str(const std::string& key, const std::string& fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = it->second;
    values_.erase(it);
    return v;
  }
  void done() const {
    if (!values_.empty()) fail(line_, "unknown option " + values_.begin()->first);
  }

 private:
  int line_;
  std::map<std::string, std::string> values_;
};

}  // namespace

const char* layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kBatchNorm: return "bn";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kPool: return "pool";
    case LayerKind::kBottleneck: return "bottleneck";
    case LayerKind::kBasic: return "basic";
    case LayerKind::kGlobalPool: return "gpool";
    case LayerKind::kFc: return "fc";
  }
  return "?";
}

ArchSpec parse_arch(const std::string& text) {
  ArchSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool have_input = false;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];

    if (kw == "name") {
      if (tok.size() != 2) fail(line, "name takes one word");
      spec.name = tok[1];
      continue;
    }
    if (kw == "input") {
      if (tok.size() != 4) fail(line, "input takes height width channels");
      spec.in_h = to_int(tok[1], line, "height");
      spec.in_w = to_int(tok[2], line, "width");
      spec.in_c = to_int(tok[3], line, "channels");
      if (spec.in_h < 1 || spec.in_w < 1 || spec.in_c < 1) fail(line, "input dims must be positive");
      have_input = true;
      continue;
    }
    if (!have_input) fail(line, "layers must follow the input line");

    Layer l;
    l.line = line;
    std::size_t first = 1;
    if (kw == "conv") {
      l.kind = LayerKind::kConv;
    } else if (kw == "bn") {
      l.kind = LayerKind::kBatchNorm;
    } else if (kw == "relu") {
      l.kind = LayerKind::kRelu;
    } else if (kw == "pool") {
      l.kind = LayerKind::kPool;
      if (tok.size() < 2 || (tok[1] != "max" && tok[1] != "avg")) fail(line, "pool needs max or avg");
      l.max_pool = tok[1] == "max";
      first = 2;
    } else if (kw == "bottleneck") {
      l.kind = LayerKind::kBottleneck;
    } else if (kw == "basic") {
      l.kind = LayerKind::kBasic;
    } else if (kw == "gpool") {
      l.kind = LayerKind::kGlobalPool;
    } else if (kw == "fc") {
      l.kind = LayerKind::kFc;
    } else {
      fail(line, "unknown layer '" + kw + "'");
    }

    Options opt(tok, first, line);
    switch (l.kind) {
      case LayerKind::kConv:
        l.out = opt.require("out");
        l.kernel = opt.require("k");
        l.stride = opt.get("s", 1);
        l.padding = opt.get("p", 0);
        l.bias = opt.get("bias", 0) != 0;
        l.expect_in = opt.get("in", 0);
        break;
      case LayerKind::kPool:
        l.kernel = opt.require("k");
        l.stride = opt.get("s", l.kernel);
        l.padding = opt.get("p", 0);
        break;
      case LayerKind::kBottleneck:
      case LayerKind::kBasic: {
        l.out = opt.require("width");
        l.blocks = opt.require("blocks");
        l.stride = opt.get("s", 1);
        const std::string where = opt.get_str("stride_on", l.kind == LayerKind::kBottleneck ? "1x1" : "3x3");
        if (where != "1x1" && where != "3x3") fail(line, "stride_on must be 1x1 or 3x3");
        l.stride_on_3x3 = where == "3x3";
        break;
      }
      case LayerKind::kFc:
        l.out = opt.require("out");
        l.bias = opt.get("bias", 1) != 0;
        break;
      default:
        break;
    }
    opt.done();
    if ((l.kind == LayerKind::kConv || l.kind == LayerKind::kFc) && l.out < 1) fail(line, "out must be >= 1");
    if (l.kernel < 1 || l.stride < 1 || l.padding < 0) fail(line, "kernel/stride must be >= 1, padding >= 0");
    if ((l.kind == LayerKind::kBottleneck || l.kind == LayerKind::kBasic) && (l.out < 1 || l.blocks < 1)) {
      fail(line, "width and blocks must be >= 1");
    }
    spec.layers.push_back(l);
  }
  if (!have_input) fail(line, "missing input line");
  return spec;
}

ArchSpec load_arch(const std::filesystem::path& path) {
  const auto bytes = pipeline::read_file(path);
  ArchSpec spec = parse_arch(std::string(bytes.begin(), bytes.end()));
  if (spec.name.empty()) spec.name = path.stem().string();
  return spec;
}

std::string to_text(const ArchSpec& spec) {
  std::ostringstream out;
  if (!spec.name.empty()) out << "name " << spec.name << '\n';
  out << "input " << spec.in_h << ' ' << spec.in_w << ' ' << spec.in_c << '\n';
  for (const Layer& l : spec.layers) {
    switch (l.kind) {
      case LayerKind::kConv:
        out << "conv out=" << l.out << " k=" << l.kernel << " s=" << l.stride << " p=" << l.padding;
        if (l.bias) out << " bias=1";
        if (l.expect_in) out << " in=" << l.expect_in;
        break;
      case LayerKind::kBatchNorm: out << "bn"; break;
      case LayerKind::kRelu: out << "relu"; break;
      case LayerKind::kPool:
        out << "pool " << (l.max_pool ? "max" : "avg") << " k=" << l.kernel << " s=" << l.stride
            << " p=" << l.padding;
        break;
      case LayerKind::kBottleneck:
      case LayerKind::kBasic:
        out << layer_kind_name(l.kind) << " width=" << l.out << " blocks=" << l.blocks
            << " s=" << l.stride << " stride_on=" << (l.stride_on_3x3 ? "3x3" : "1x1");
        break;
      case LayerKind::kGlobalPool: out << "gpool"; break;
      case LayerKind::kFc:
        out << "fc out=" << l.out;
        if (!l.bias) out << " bias=0";
        break;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fcv::flops
