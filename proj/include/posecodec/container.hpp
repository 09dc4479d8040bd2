#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "posecodec/huffman.hpp"
#include "posecodec/quantizer.hpp"
#include "posecodec/types.hpp"

namespace posecodec {

// Container layout (all multi-byte integers little-endian):
//
//   offset  size  field
//   0       4     magic "CPSG"
//   4       1     version (1)
//   5       2     frame count N
//   7       2     width
//   9       2     height
//   11      2     kept count M
//   13      1     kept-index rule (0 = every other frame back from frame N)
//   14      16    fx, fy, cx, cy as binary32
//   30      48    12 x (scale, bias) as binary16, parameter-major
//   78      var   Huffman code lengths, run-length coded, zero-padded to a byte
//   ...     4     payload bit count
//   ...     var   payload, zero-padded to a byte
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::uint8_t kKeptRuleAlternateFromEnd = 0;
inline constexpr std::size_t kFixedHeaderBytes = 14;
inline constexpr std::size_t kIntrinsicsBytes = 16;
inline constexpr std::size_t kQuantParamBytes = kPoseParams * 2 * 2;
inline constexpr std::size_t kBitCountBytes = 4;

struct PoseStream {
  QuantizedDeltas quantized;
  CameraIntrinsics intrinsics;  // width/height carry the frame dimensions
  int frame_count = 0;

  friend bool operator==(const PoseStream&, const PoseStream&) = default;
};

/// Byte offsets of each region of a container.
struct ContainerLayout {
  std::size_t table_offset = 0;
  std::size_t table_bytes = 0;
  std::size_t payload_offset = 0;
  std::size_t payload_bits = 0;
  std::size_t payload_bytes = 0;
  std::size_t total_bytes = 0;
  HuffmanTable table;
};

/// Serializes one GoP. Intrinsics are stored as binary32, so a read-back
/// returns them rounded to float precision. Throws InvalidArgument when a
/// field does not fit its storage or M disagrees with the kept-index rule.
std::vector<std::uint8_t> write_stream(const QuantizedDeltas& quantized,
                                       const CameraIntrinsics& intrinsics, int frame_count);

/// Exact inverse of write_stream. Throws StreamError for a bad magic, an
/// unsupported version or rule, truncation, trailing data, or a payload that
/// does not decode to exactly M x 12 symbols.
PoseStream read_stream(std::span<const std::uint8_t> bytes);

/// Parses framing only (no payload decode).
ContainerLayout parse_layout(std::span<const std::uint8_t> bytes);

std::uint64_t stream_size_bits(std::span<const std::uint8_t> bytes);

/// Intrinsics as they survive a binary32 round trip.
CameraIntrinsics stored_intrinsics(const CameraIntrinsics& intrinsics);

}  // namespace posecodec
