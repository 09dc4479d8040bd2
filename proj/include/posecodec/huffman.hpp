#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "posecodec/bit_io.hpp"

namespace posecodec {

inline constexpr int kAlphabetSize = 256;
inline constexpr int kMaxCodeLength = 32;

using Histogram = std::array<std::uint64_t, kAlphabetSize>;

Histogram histogram(std::span<const std::uint8_t> symbols);

/// Canonical Huffman code described entirely by per-symbol code lengths
/// (0 = symbol absent). Codewords are assigned in (length, symbol) order.
struct HuffmanTable {
  std::array<std::uint8_t, kAlphabetSize> lengths{};

  bool contains(std::uint8_t symbol) const { return lengths[symbol] != 0; }
  int max_length() const;
  /// Kraft sum scaled by 2^32; a valid prefix code satisfies <= 2^32.
  std::uint64_t kraft_sum_scaled() const;
  /// Canonical codewords, right-aligned in the low `lengths[s]` bits.
  std::array<std::uint32_t, kAlphabetSize> codes() const;

  friend bool operator==(const HuffmanTable&, const HuffmanTable&) = default;
};

/// Optimal code lengths for the histogram. Ties merge the lowest counts first,
/// then the subtree holding the smallest symbol, then the older node. Depths
/// over 32 fall back to package-merge. A single present symbol gets length 1.
/// Throws InvalidArgument on an empty histogram.
HuffmanTable build_table(const Histogram& counts);

/// Length-limited optimal code lengths (package-merge).
HuffmanTable build_limited_table(const Histogram& counts, int max_length);

struct EncodedBits {
  std::vector<std::uint8_t> bytes;  // MSB-first, last byte zero-padded
  std::size_t bit_count = 0;
};

/// Throws InvalidArgument if a symbol has no codeword.
EncodedBits encode(std::span<const std::uint8_t> symbols, const HuffmanTable& table);

/// Decodes exactly `count` symbols from the first `bit_count` bits. Throws
/// StreamError ("stream exhausted" / "invalid prefix") on corrupt input.
std::vector<std::uint8_t> decode(std::span<const std::uint8_t> bytes, std::size_t bit_count,
                                 const HuffmanTable& table, std::size_t count);

/// Bit-level table serialization: per symbol, '1' + 6-bit length for a
/// present symbol, or '0' + Elias-gamma length of a run of absent symbols.
void write_table(BitWriter& out, const HuffmanTable& table);
HuffmanTable read_table(BitReader& in);

/// Payload cost in bits of coding `counts` with `table`.
std::uint64_t encoded_bit_count(const Histogram& counts, const HuffmanTable& table);

}  // namespace posecodec
