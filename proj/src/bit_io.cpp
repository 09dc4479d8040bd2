#include "posecodec/bit_io.hpp"

#include <bit>

#include "posecodec/errors.hpp"

namespace posecodec {

void BitWriter::write(std::uint32_t value, int bit_count) {
  while (bit_count > 0) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    const int free = 8 - static_cast<int>(bits_ % 8);
    const int take = bit_count < free ? bit_count : free;
    const std::uint32_t chunk = (value >> (bit_count - take)) & ((1u << take) - 1u);
    bytes_.back() |= static_cast<std::uint8_t>(chunk << (free - take));
    bits_ += static_cast<std::size_t>(take);
    bit_count -= take;
  }
}

void BitWriter::write_gamma(std::uint32_t value) {
  const int width = std::bit_width(value);
  write(0, width - 1);
  write(value, width);
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count)
    : bytes_(bytes), limit_(bit_count) {
  if (bit_count > bytes.size() * 8) throw StreamError("bit count exceeds buffer size");
}

std::uint32_t BitReader::read(int bit_count) {
  if (static_cast<std::size_t>(bit_count) > remaining()) throw StreamError("stream exhausted");
  if (bit_count == 0) return 0;
  const std::uint32_t v = peek32() >> (32 - bit_count);
  pos_ += static_cast<std::size_t>(bit_count);
  return v;
}

std::uint32_t BitReader::read_gamma() {
  int zeros = 0;
  while (!read_bit()) {
    if (++zeros > 31) throw StreamError("invalid gamma code");
  }
  return (1u << zeros) | read(zeros);
}

std::uint32_t BitReader::peek32() const {
  // Gather 5 bytes so a window starting mid-byte still yields 32 bits.
  const std::size_t byte = pos_ / 8;
  std::uint64_t window = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    window <<= 8;
    if (byte + i < bytes_.size()) window |= bytes_[byte + i];
  }
  const auto shift = static_cast<int>(pos_ % 8);
  auto out = static_cast<std::uint32_t>((window << shift) >> 8);
  // Mask off bits beyond the logical end of the stream.
  const std::size_t avail = remaining();
  if (avail < 32) out &= avail == 0 ? 0u : ~0u << (32 - avail);
  return out;
}

void BitReader::skip(std::size_t bit_count) {
  if (bit_count > remaining()) throw StreamError("stream exhausted");
  pos_ += bit_count;
}

}  // namespace posecodec
