#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "posecodec/half.hpp"
#include "posecodec/types.hpp"

namespace posecodec {

inline constexpr int kPoseParams = 12;
inline constexpr int kMaxSymbol = 255;

/// Frames kept by the subsampler: every other frame counted back from the
/// GoP endpoint, never frame 1. Frame numbers are 1-based.
///   n even -> 2, 4, ..., n
///   n odd  -> 3, 5, ..., n
std::vector<int> kept_frame_numbers(int frame_count);

/// Number of kept frames, ceil((n - 1) / 2).
int kept_count(int frame_count);

struct KeptPoses {
  std::vector<CameraExtrinsics> poses;
  std::vector<int> frames;  // 1-based, strictly increasing
};

/// Throws InvalidArgument when the trajectory has fewer than 2 frames.
KeptPoses subsample(const PoseTrajectory& relative);

/// Element-wise differences of the flattened 3x4 extrinsics. The first delta
/// is taken against the identity extrinsic (frame 1 of a relative trajectory).
struct DeltaSequence {
  std::vector<PoseEntries> deltas;

  std::size_t size() const { return deltas.size(); }
};

DeltaSequence delta_encode(const std::vector<CameraExtrinsics>& kept);

/// Per-parameter affine map e = scale * B + bias, shared by all frames of a
/// GoP. Both terms are binary16 values.
struct AffineQuantizerParams {
  std::array<Half, kPoseParams> scale{};
  std::array<Half, kPoseParams> bias{};

  friend bool operator==(const AffineQuantizerParams&, const AffineQuantizerParams&) = default;
};

using SymbolRow = std::array<std::uint8_t, kPoseParams>;

struct QuantizedDeltas {
  std::vector<SymbolRow> symbols;  // one row of 12 symbols per kept frame
  AffineQuantizerParams params;

  /// Frame-major flattening used as the entropy coder input.
  std::vector<std::uint8_t> flat_symbols() const;

  friend bool operator==(const QuantizedDeltas&, const QuantizedDeltas&) = default;
};

/// Min-max fit per parameter: bias = min, scale = (max - min) / 255, both
/// rounded to binary16. The scale is nudged up until the stored map covers
/// the parameter's maximum again. Throws InvalidArgument on an empty or
/// non-finite sequence, or a range outside binary16.
AffineQuantizerParams fit_quantizer(const DeltaSequence& deltas);

/// B = round_half_away((e - bias) / scale) clamped to [0, 255]; B = 0 when scale is 0.
QuantizedDeltas quantize(const DeltaSequence& deltas, const AffineQuantizerParams& params);

std::uint8_t quantize_value(double value, Half scale, Half bias);

/// e = scale * B + bias evaluated in double. Exact: the product of an 11-bit
/// significand and an 8-bit integer plus a binary16 bias fits in 53 bits.
DeltaSequence dequantize(const QuantizedDeltas& quantized);

/// Prefix sum of deltas from the identity extrinsic; each rotation block is
/// projected with nearest_rotation, translations are kept as summed.
std::vector<CameraExtrinsics> reconstruct_kept(const DeltaSequence& deltas);

/// Prefix sum without the rotation projection.
std::vector<PoseEntries> accumulate_deltas(const DeltaSequence& deltas);

}  // namespace posecodec
