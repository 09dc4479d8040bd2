#include "posecodec/huffman.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "posecodec/errors.hpp"

namespace posecodec {

Histogram histogram(std::span<const std::uint8_t> symbols) {
  Histogram h{};
  for (auto s : symbols) ++h[s];
  return h;
}

int HuffmanTable::max_length() const {
  return *std::max_element(lengths.begin(), lengths.end());
}

std::uint64_t HuffmanTable::kraft_sum_scaled() const {
  std::uint64_t sum = 0;
  for (auto len : lengths) {
    if (len) sum += std::uint64_t{1} << (kMaxCodeLength - len);
  }
  return sum;
}

std::array<std::uint32_t, kAlphabetSize> HuffmanTable::codes() const {
  std::array<std::uint32_t, kAlphabetSize> out{};
  std::array<int, kMaxCodeLength + 1> per_length{};
  for (auto len : lengths) ++per_length[len];
  per_length[0] = 0;

  std::array<std::uint64_t, kMaxCodeLength + 2> next{};
  std::uint64_t code = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    code = (code + static_cast<std::uint64_t>(per_length[len - 1])) << 1;
    next[len] = code;
  }
  for (int s = 0; s < kAlphabetSize; ++s) {
    if (lengths[s]) out[s] = static_cast<std::uint32_t>(next[lengths[s]]++);
  }
  return out;
}

namespace {

struct Node {
  std::uint64_t count;
  int min_symbol;
  int order;
  int left = -1;
  int right = -1;
};

}  // namespace

HuffmanTable build_table(const Histogram& counts) {
  std::vector<Node> nodes;
  for (int s = 0; s < kAlphabetSize; ++s) {
    if (counts[s]) nodes.push_back({counts[s], s, static_cast<int>(nodes.size())});
  }
  if (nodes.empty()) throw InvalidArgument("build_table: empty histogram");

  HuffmanTable table;
  if (nodes.size() == 1) {
    table.lengths[nodes.front().min_symbol] = 1;
    return table;
  }

  auto later = [&nodes](int a, int b) {
    const Node& x = nodes[a];
    const Node& y = nodes[b];
    return std::tie(x.count, x.min_symbol, x.order) > std::tie(y.count, y.min_symbol, y.order);
  };
  std::priority_queue<int, std::vector<int>, decltype(later)> heap(later);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) heap.push(i);

  while (heap.size() > 1) {
    const int a = heap.top();
    heap.pop();
    const int b = heap.top();
    heap.pop();
    Node parent{nodes[a].count + nodes[b].count,
                std::min(nodes[a].min_symbol, nodes[b].min_symbol),
                static_cast<int>(nodes.size()), a, b};
    nodes.push_back(parent);
    heap.push(static_cast<int>(nodes.size()) - 1);
  }

  // Depth-first walk from the root assigns leaf depths.
  bool too_deep = false;
  std::vector<std::pair<int, int>> stack{{heap.top(), 0}};
  while (!stack.empty()) {
    auto [idx, depth] = stack.back();
    stack.pop_back();
    const Node& n = nodes[idx];
    if (n.left < 0) {
      if (depth > kMaxCodeLength) too_deep = true;
      table.lengths[n.min_symbol] = static_cast<std::uint8_t>(std::min(depth, 255));
    } else {
      stack.push_back({n.left, depth + 1});
      stack.push_back({n.right, depth + 1});
    }
  }
  if (too_deep) return build_limited_table(counts, kMaxCodeLength);
  return table;
}

HuffmanTable build_limited_table(const Histogram& counts, int max_length) {
  struct Item {
    std::uint64_t weight;
    std::vector<std::uint8_t> uses;  // per present-symbol occurrence count
  };

  std::vector<int> symbols;
  for (int s = 0; s < kAlphabetSize; ++s) {
    if (counts[s]) symbols.push_back(s);
  }
  if (symbols.empty()) throw InvalidArgument("build_table: empty histogram");
  const std::size_t n = symbols.size();
  if (max_length < 1 || (n > 1 && (std::size_t{1} << std::min(max_length, 62)) < n)) {
    throw InvalidArgument("build_limited_table: max length too small for alphabet");
  }

  HuffmanTable table;
  if (n == 1) {
    table.lengths[symbols.front()] = 1;
    return table;
  }

  std::stable_sort(symbols.begin(), symbols.end(),
                   [&](int a, int b) { return counts[a] < counts[b]; });
  std::vector<Item> leaves;
  for (std::size_t i = 0; i < n; ++i) {
    Item it{counts[symbols[i]], std::vector<std::uint8_t>(n, 0)};
    it.uses[i] = 1;
    leaves.push_back(std::move(it));
  }

  std::vector<Item> current = leaves;
  for (int level = 1; level < max_length; ++level) {
    std::vector<Item> packages;
    for (std::size_t i = 0; i + 1 < current.size(); i += 2) {
      Item p{current[i].weight + current[i + 1].weight, current[i].uses};
      for (std::size_t k = 0; k < n; ++k) p.uses[k] += current[i + 1].uses[k];
      packages.push_back(std::move(p));
    }
    std::vector<Item> merged;
    merged.reserve(leaves.size() + packages.size());
    std::size_t a = 0, b = 0;
    while (a < leaves.size() || b < packages.size()) {
      // Leaves win ties so the merge is deterministic.
      if (b == packages.size() || (a < leaves.size() && leaves[a].weight <= packages[b].weight)) {
        merged.push_back(leaves[a++]);
      } else {
        merged.push_back(std::move(packages[b++]));
      }
    }
    current = std::move(merged);
  }

  std::vector<int> length(n, 0);
  for (std::size_t i = 0; i < 2 * n - 2; ++i) {
    for (std::size_t k = 0; k < n; ++k) length[k] += current[i].uses[k];
  }
  for (std::size_t k = 0; k < n; ++k) table.lengths[symbols[k]] = static_cast<std::uint8_t>(length[k]);
  return table;
}

EncodedBits encode(std::span<const std::uint8_t> symbols, const HuffmanTable& table) {
  const auto codes = table.codes();
  BitWriter out;
  for (auto s : symbols) {
    const int len = table.lengths[s];
    if (!len) throw InvalidArgument("encode: symbol " + std::to_string(s) + " absent from table");
    out.write(codes[s], len);
  }
  EncodedBits enc;
  enc.bit_count = out.bit_count();
  enc.bytes = out.take();
  return enc;
}

namespace {

constexpr int kLookupBits = 10;

struct Decoder {
  std::array<std::uint64_t, kMaxCodeLength + 1> first_code{};
  std::array<std::uint32_t, kMaxCodeLength + 1> count{};
  std::array<std::uint32_t, kMaxCodeLength + 1> first_index{};
  std::vector<std::uint8_t> sorted;  // symbols in canonical order
  // Lookup entry: symbol in the low byte, length above it; 0 = no short code.
  std::vector<std::uint16_t> lookup;

  explicit Decoder(const HuffmanTable& table) : lookup(std::size_t{1} << kLookupBits, 0) {
    for (int len = 1; len <= kMaxCodeLength; ++len) {
      for (int s = 0; s < kAlphabetSize; ++s) {
        if (table.lengths[s] == len) sorted.push_back(static_cast<std::uint8_t>(s));
      }
    }
    std::uint64_t code = 0;
    std::uint32_t index = 0;
    for (int len = 1; len <= kMaxCodeLength; ++len) {
      first_code[len] = code;
      first_index[len] = index;
      for (int s = 0; s < kAlphabetSize; ++s) count[len] += table.lengths[s] == len;
      code = (code + count[len]) << 1;
      index += count[len];
    }
    const auto codes = table.codes();
    for (int s = 0; s < kAlphabetSize; ++s) {
      const int len = table.lengths[s];
      if (!len || len > kLookupBits) continue;
      const std::uint32_t base = codes[s] << (kLookupBits - len);
      for (std::uint32_t fill = 0; fill < (1u << (kLookupBits - len)); ++fill) {
        lookup[base | fill] = static_cast<std::uint16_t>((len << 8) | s);
      }
    }
  }
};

}  // namespace

std::vector<std::uint8_t> decode(std::span<const std::uint8_t> bytes, std::size_t bit_count,
                                 const HuffmanTable& table, std::size_t count) {
  std::vector<std::uint8_t> out;
  if (count == 0) return out;
  if (table.max_length() > kMaxCodeLength || table.kraft_sum_scaled() > (std::uint64_t{1} << kMaxCodeLength)) {
    throw StreamError("invalid Huffman table");
  }
  const Decoder dec(table);
  BitReader in(bytes, bit_count);
  out.reserve(count);

  while (out.size() < count) {
    const std::uint32_t window = in.peek32();
    const std::uint16_t entry = dec.lookup[window >> (32 - kLookupBits)];
    if (entry) {
      const std::size_t len = entry >> 8;
      if (len > in.remaining()) throw StreamError("stream exhausted");
      out.push_back(static_cast<std::uint8_t>(entry & 0xFF));
      in.skip(len);
      continue;
    }
    bool found = false;
    for (int len = 1; len <= kMaxCodeLength; ++len) {
      if (!dec.count[len]) continue;
      const std::uint64_t code = window >> (32 - len);
      const std::uint64_t offset = code - dec.first_code[len];
      if (code >= dec.first_code[len] && offset < dec.count[len]) {
        if (static_cast<std::size_t>(len) > in.remaining()) throw StreamError("stream exhausted");
        out.push_back(dec.sorted[dec.first_index[len] + offset]);
        in.skip(static_cast<std::size_t>(len));
        found = true;
        break;
      }
    }
    if (!found) {
      if (in.remaining() < static_cast<std::size_t>(table.max_length())) throw StreamError("stream exhausted");
      throw StreamError("invalid prefix");
    }
  }
  return out;
}

void write_table(BitWriter& out, const HuffmanTable& table) {
  int s = 0;
  while (s < kAlphabetSize) {
    if (table.lengths[s]) {
      out.write_bit(true);
      out.write(table.lengths[s], 6);
      ++s;
      continue;
    }
    std::uint32_t run = 0;
    while (s < kAlphabetSize && !table.lengths[s]) {
      ++run;
      ++s;
    }
    out.write_bit(false);
    out.write_gamma(run);
  }
}

HuffmanTable read_table(BitReader& in) {
  HuffmanTable table;
  int s = 0;
  while (s < kAlphabetSize) {
    if (in.read_bit()) {
      const auto len = in.read(6);
      if (len == 0 || len > kMaxCodeLength) throw StreamError("invalid Huffman code length");
      table.lengths[s++] = static_cast<std::uint8_t>(len);
    } else {
      const auto run = in.read_gamma();
      if (run > static_cast<std::uint32_t>(kAlphabetSize - s)) throw StreamError("Huffman table run overflow");
      s += static_cast<int>(run);
    }
  }
  if (table.kraft_sum_scaled() > (std::uint64_t{1} << kMaxCodeLength)) {
    throw StreamError("Huffman table violates the Kraft inequality");
  }
  return table;
}

std::uint64_t encoded_bit_count(const Histogram& counts, const HuffmanTable& table) {
  std::uint64_t bits = 0;
  for (int s = 0; s < kAlphabetSize; ++s) bits += counts[s] * table.lengths[s];
  return bits;
}

}  // namespace posecodec
