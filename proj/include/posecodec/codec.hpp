#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "posecodec/container.hpp"
#include "posecodec/errors.hpp"
#include "posecodec/types.hpp"

namespace posecodec {

/// Intermediate products of one encode, kept for inspection and tests.
struct EncodedGop {
  PoseTrajectory relative;
  KeptPoses kept;
  DeltaSequence deltas;
  QuantizedDeltas quantized;
  std::vector<std::uint8_t> bytes;
};

/// Validation failure with the frame-indexed violations attached.
class ValidationFailed : public InvalidArgument {
 public:
  explicit ValidationFailed(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// validate -> relative -> subsample -> delta -> fit -> quantize -> container.
EncodedGop encode_gop(const PoseTrajectory& trajectory);

/// container -> dequantize -> kept poses -> interpolated relative trajectory.
PoseTrajectory decode_gop(std::span<const std::uint8_t> bytes);

/// Decode path applied to an in-memory quantized stream.
PoseTrajectory reconstruct(const PoseStream& stream);

}  // namespace posecodec
