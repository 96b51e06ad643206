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

#include "fcv/bitio/huffman.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "fcv/error.hpp"

namespace fcv::bitio {
namespace {

// Unlimited Huffman code lengths for the nonzero entries of counts.
// Ties in the merge queue break on node id, which keeps the result
// reproducible across standard library implementations.
std::vector<int> huffman_lengths(std::span<const std::uint64_t> counts) {
  struct Node {
    std::uint64_t weight;
    std::size_t id;
    bool operator>(const Node& o) const {
      return weight != o.weight ? weight > o.weight : id > o.id;
    }
  };
  std::vector<std::size_t> parent;
  std::priority_queue<Node, std::vector<Node>, std::greater<>> queue;
  std::vector<std::size_t> leaf_of(counts.size(), SIZE_MAX);
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] == 0) continue;
    leaf_of[s] = parent.size();
    queue.push({counts[s], parent.size()});
    parent.push_back(SIZE_MAX);
  }
  while (queue.size() > 1) {
    const Node a = queue.top();
    queue.pop();
    const Node b = queue.top();
    queue.pop();
    const std::size_t id = parent.size();
    parent.push_back(SIZE_MAX);
    parent[a.id] = id;
    parent[b.id] = id;
    queue.push({a.weight + b.weight, id});
  }
  std::vector<int> lengths(counts.size(), 0);
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (leaf_of[s] == SIZE_MAX) continue;
    int depth = 0;
    for (std::size_t n = leaf_of[s]; parent[n] != SIZE_MAX; n = parent[n]) ++depth;
    lengths[s] = std::max(depth, 1);
  }
  return lengths;
}

}  // namespace

HuffmanTable HuffmanTable::from_lengths(std::span<const std::uint8_t> lengths) {
  HuffmanTable t;
  t.lengths_.assign(lengths.begin(), lengths.end());
  t.codes_.assign(lengths.size(), 0);

  std::uint64_t kraft = 0;  // in units of 2^-kMaxSupportedCodeLength
  for (std::size_t s = 0; s < lengths.size(); ++s) {
    const int len = lengths[s];
    if (len == 0) continue;
    if (len > kMaxSupportedCodeLength) {
      throw Error(ErrorKind::kCorruptStream,
                  "huffman code length " + std::to_string(len) + " exceeds " +
                      std::to_string(kMaxSupportedCodeLength));
    }
    kraft += std::uint64_t{1} << (kMaxSupportedCodeLength - len);
    ++t.count_[len];
    ++t.symbol_count_;
    t.max_len_ = std::max(t.max_len_, len);
  }
  if (kraft > (std::uint64_t{1} << kMaxSupportedCodeLength)) {
    throw Error(ErrorKind::kCorruptStream, "huffman code lengths are oversubscribed");
  }

  t.sorted_symbols_.reserve(t.symbol_count_);
  for (int len = 1; len <= kMaxSupportedCodeLength; ++len) {
    for (std::size_t s = 0; s < lengths.size(); ++s) {
      if (lengths[s] == len) t.sorted_symbols_.push_back(static_cast<Symbol>(s));
    }
  }

  std::uint32_t code = 0;
  std::uint32_t index = 0;
  for (int len = 1; len <= kMaxSupportedCodeLength; ++len) {
    t.first_code_[len] = code;
    t.first_index_[len] = index;
    for (std::uint32_t i = 0; i < t.count_[len]; ++i) {
      t.codes_[t.sorted_symbols_[index + i]] = code + i;
    }
    code = (code + t.count_[len]) << 1;
    index += t.count_[len];
  }

  for (std::size_t s = 0; s < lengths.size(); ++s) {
    const int len = lengths[s];
    if (len == 0 || len > kLookupBits) continue;
    const std::uint32_t base = t.codes_[s] << (kLookupBits - len);
    const std::uint32_t span = std::uint32_t{1} << (kLookupBits - len);
    for (std::uint32_t i = 0; i < span; ++i) {
      t.lookup_[base + i] = {static_cast<Symbol>(s), static_cast<std::uint8_t>(len)};
    }
  }
  return t;
}

void HuffmanTable::encode(BitWriter& out, Symbol symbol) const {
  if (!contains(symbol)) {
    throw Error(ErrorKind::kEncode, "symbol " + std::to_string(symbol) + " not in huffman table");
  }
  out.put_bits(codes_[symbol], lengths_[symbol]);
}

Symbol HuffmanTable::decode_slow(BitReader& in) const {
  const std::uint64_t at = in.position();
  if (symbol_count_ == 0) throw Error(ErrorKind::kCorruptStream, "decode with an empty huffman table", at);
  for (int len = 1; len <= max_len_; ++len) {
    if (count_[len] == 0) continue;
    const std::uint32_t code = in.peek_bits(len);
    if (code >= first_code_[len] && code - first_code_[len] < count_[len]) {
      in.skip_bits(len);
      return sorted_symbols_[first_index_[len] + (code - first_code_[len])];
    }
  }
  if (in.bits_remaining() < static_cast<std::uint64_t>(max_len_)) {
    throw Error(ErrorKind::kTruncatedStream, "huffman codeword runs past end of data", at);
  }
  throw Error(ErrorKind::kCorruptStream, "bit pattern is not a huffman codeword", at);
}

HuffmanTable build_huffman(std::span<const std::uint64_t> counts, int max_code_len) {
  if (max_code_len < 1 || max_code_len > kMaxSupportedCodeLength) {
    throw_parameter("build_huffman: max code length " + std::to_string(max_code_len) + " out of range");
  }
  if (counts.size() > (std::size_t{1} << 16)) throw_parameter("build_huffman: alphabet larger than 65536");
  std::vector<std::size_t> used;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] != 0) used.push_back(s);
  }
  if (used.empty()) throw_parameter("build_huffman: no symbol has a nonzero count");
  if (used.size() > (std::size_t{1} << max_code_len)) {
    throw_parameter("build_huffman: too many symbols for the code length limit");
  }

  const std::vector<int> raw = huffman_lengths(counts);
  const int raw_max = *std::max_element(raw.begin(), raw.end());

  // Histogram of lengths, then the classic JPEG adjustment to cap it.
  std::vector<int> bits(std::max(raw_max, max_code_len) + 1, 0);
  for (const std::size_t s : used) ++bits[raw[s]];
  for (int i = raw_max; i > max_code_len; --i) {
    while (bits[i] > 0) {
      int j = i - 2;
      while (bits[j] == 0) --j;
      bits[i] -= 2;
      bits[i - 1] += 1;
      bits[j + 1] += 2;
      bits[j] -= 1;
    }
  }

  // Most frequent symbols take the shortest lengths; ties go to the lower
  // symbol. For an unlimited code this reproduces the tree's length multiset.
  std::stable_sort(used.begin(), used.end(), [&](std::size_t a, std::size_t b) {
    return counts[a] > counts[b];
  });
  std::vector<std::uint8_t> lengths(counts.size(), 0);
  std::size_t next = 0;
  for (int len = 1; len < static_cast<int>(bits.size()); ++len) {
    for (int i = 0; i < bits[len]; ++i) lengths[used[next++]] = static_cast<std::uint8_t>(len);
  }
  return HuffmanTable::from_lengths(lengths);
}

HuffmanTable build_huffman(const std::map<Symbol, std::uint64_t>& freqs, int max_code_len) {
  if (freqs.empty()) throw_parameter("build_huffman: empty frequency map");
  std::vector<std::uint64_t> counts(std::size_t{freqs.rbegin()->first} + 1, 0);
  for (const auto& [symbol, count] : freqs) counts[symbol] = count;
  return build_huffman(counts, max_code_len);
}

BitBuffer huffman_encode(const HuffmanTable& table, std::span<const Symbol> symbols) {
  BitWriter out;
  for (const Symbol s : symbols) table.encode(out, s);
  return out.finish();
}

std::vector<Symbol> huffman_decode(const HuffmanTable& table, const BitBuffer& bits,
                                   std::size_t count) {
  BitReader in(bits.bytes, bits.bit_count);
  std::vector<Symbol> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(table.decode(in));
  return out;
}

}  // namespace fcv::bitio
