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

#include "fcv/pipeline/export.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>

#include <json.hpp>

#include "fcv/error.hpp"

namespace fcv::pipeline {
namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'C', 'V', 'T'};

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (n > bytes_.size() - pos_) {
      throw Error(ErrorKind::kFormat, std::string("truncated tensor file: ") + what + " needs " +
                                          std::to_string(n) + " bytes, " +
                                          std::to_string(bytes_.size() - pos_) + " remain");
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint64_t be(int n, const char* what) {
    std::uint64_t v = 0;
    for (std::uint8_t b : take(static_cast<std::size_t>(n), what)) v = v << 8 | b;
    return v;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void check_shape(const TensorFile& f) {
  if (f.dims.empty() || f.dims.size() > 255) throw Error(ErrorKind::kFormat, "ndim must be 1..255");
  if (f.kind != StreamKind::kFrequency && f.kind != StreamKind::kTemporal) {
    throw Error(ErrorKind::kFormat, "unknown stream kind");
  }
  if (f.fbs_k < 0 || f.fbs_k > 64) throw Error(ErrorKind::kFormat, "fbs_k must be 0..64");
  if (f.values.size() != f.element_count()) {
    throw Error(ErrorKind::kFormat, "value count " + std::to_string(f.values.size()) +
                                        " does not match dims (" +
                                        std::to_string(f.element_count()) + ")");
  }
}

}  // namespace

std::size_t TensorFile::element_count() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t a, std::uint32_t d) { return a * d; });
}

std::size_t tensor_header_size(const TensorFile& f) {
  return 4 + 4 + 4 * f.dims.size() + 2 + f.metadata.size();
}

std::vector<std::uint8_t> serialize(const TensorFile& f) {
  check_shape(f);
  if (f.metadata.size() > 0xFFFF) throw Error(ErrorKind::kFormat, "metadata longer than 65535 bytes");
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(tensor_header_size(f) + 4 * f.values.size());
  out.push_back(kTensorFileVersion);
  out.push_back(static_cast<std::uint8_t>(f.kind));
  out.push_back(static_cast<std::uint8_t>(f.fbs_k));
  out.push_back(static_cast<std::uint8_t>(f.dims.size()));
  for (std::uint32_t d : f.dims) put_be(out, d, 4);
  put_be(out, f.metadata.size(), 2);
  out.insert(out.end(), f.metadata.begin(), f.metadata.end());
  for (float v : f.values) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  return out;
}

TensorFile deserialize(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const auto magic = in.take(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic)) {
    throw Error(ErrorKind::kFormat, "bad magic, expected FCVT");
  }
  const auto version = in.be(1, "version");
  if (version != kTensorFileVersion) {
    throw Error(ErrorKind::kFormat, "unsupported tensor file version " + std::to_string(version));
  }
  TensorFile f;
  const auto kind = in.be(1, "stream kind");
  if (kind > 1) throw Error(ErrorKind::kFormat, "unknown stream kind " + std::to_string(kind));
  f.kind = static_cast<StreamKind>(kind);
  f.fbs_k = static_cast<int>(in.be(1, "fbs_k"));
  const auto ndim = in.be(1, "ndim");
  if (ndim == 0) throw Error(ErrorKind::kFormat, "ndim is zero");
  for (std::uint64_t i = 0; i < ndim; ++i) f.dims.push_back(static_cast<std::uint32_t>(in.be(4, "dims")));
  const auto meta_len = in.be(2, "metadata length");
  const auto meta = in.take(meta_len, "metadata");
  f.metadata.assign(meta.begin(), meta.end());
  const auto parsed = nlohmann::json::parse(f.metadata, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw Error(ErrorKind::kFormat, "metadata is not a JSON object");
  }
  std::size_t count = 1;
  for (std::uint32_t d : f.dims) {
    // Guards the product against overflow from a corrupt header.
    if (d != 0 && count > in.remaining() / 4 / d + 1) {
      throw Error(ErrorKind::kFormat, "dims exceed the payload size");
    }
    count *= d;
  }
  if (in.remaining() != count * 4) {
    throw Error(ErrorKind::kFormat, "payload holds " + std::to_string(in.remaining()) +
                                        " bytes, dims need " + std::to_string(count * 4));
  }
  const auto payload = in.take(count * 4, "payload");
  f.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t bits = 0;
    for (int b = 3; b >= 0; --b) bits = bits << 8 | payload[i * 4 + b];
    f.values[i] = std::bit_cast<float>(bits);
  }
  return f;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed: " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot rename onto " + path.string());
  }
}

void write_tensor_file(const std::filesystem::path& path, const TensorFile& f) {
  write_file_atomic(path, serialize(f));
}

TensorFile read_tensor_file(const std::filesystem::path& path) {
  return deserialize(read_file(path));
}

TensorFile stack(const std::vector<GridTensor>& tensors, StreamKind kind, int fbs_k,
                 std::string metadata) {
  if (tensors.empty()) throw_parameter("nothing to stack");
  const GridTensor& first = tensors.front();
  TensorFile f;
  f.kind = kind;
  f.fbs_k = fbs_k;
  f.metadata = std::move(metadata);
  f.dims = {static_cast<std::uint32_t>(tensors.size()), static_cast<std::uint32_t>(first.height),
            static_cast<std::uint32_t>(first.width), static_cast<std::uint32_t>(first.channels)};
  f.values.reserve(tensors.size() * first.data.size());
  for (const GridTensor& t : tensors) {
    if (t.height != first.height || t.width != first.width || t.channels != first.channels) {
      throw_parameter("cannot stack tensors of different shapes");
    }
    f.values.insert(f.values.end(), t.data.begin(), t.data.end());
  }
  return f;
}

std::vector<GridTensor> unstack(const TensorFile& f) {
  if (f.dims.size() != 4) throw Error(ErrorKind::kFormat, "expected an (N, H, W, C) tensor file");
  check_shape(f);
  std::vector<GridTensor> out;
  const auto h = static_cast<int>(f.dims[1]);
  const auto w = static_cast<int>(f.dims[2]);
  const auto c = static_cast<int>(f.dims[3]);
  const std::size_t each = static_cast<std::size_t>(h) * w * c;
  for (std::uint32_t n = 0; n < f.dims[0]; ++n) {
    GridTensor t(h, w, c);
    std::copy(f.values.begin() + static_cast<std::ptrdiff_t>(n * each),
              f.values.begin() + static_cast<std::ptrdiff_t>((n + 1) * each), t.data.begin());
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace fcv::pipeline
