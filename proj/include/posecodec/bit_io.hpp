#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace posecodec {

/// MSB-first bit packer. The final partial byte is zero-padded.
class BitWriter {
 public:
  void write(std::uint32_t value, int bit_count);
  void write_bit(bool bit) { write(bit ? 1u : 0u, 1); }
  /// Elias gamma code of value >= 1.
  void write_gamma(std::uint32_t value);

  std::size_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

/// MSB-first reader over a bounded number of bits. Reading past the bound
/// throws StreamError.
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count);
  explicit BitReader(std::span<const std::uint8_t> bytes)
      : BitReader(bytes, bytes.size() * 8) {}

  std::uint32_t read(int bit_count);
  bool read_bit() { return read(1) != 0; }
  std::uint32_t read_gamma();

  /// Up to 32 upcoming bits, left-aligned; missing bits read as zero.
  std::uint32_t peek32() const;
  void skip(std::size_t bit_count);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return limit_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t limit_;
  std::size_t pos_ = 0;
};

}  // namespace posecodec
