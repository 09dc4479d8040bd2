#include "posecodec/codec.hpp"

#include "posecodec/errors.hpp"
#include "posecodec/interpolation.hpp"
#include "posecodec/pose_algebra.hpp"
#include "posecodec/quantizer.hpp"

namespace posecodec {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string msg = "invalid trajectory";
  for (const auto& v : violations) msg += "; " + v.message();
  return msg;
}

}  // namespace

ValidationFailed::ValidationFailed(std::vector<Violation> violations)
    : InvalidArgument(summarize(violations)), violations_(std::move(violations)) {}

EncodedGop encode_gop(const PoseTrajectory& trajectory) {
  if (auto violations = validate_trajectory(trajectory); !violations.empty()) {
    throw ValidationFailed(std::move(violations));
  }
  EncodedGop gop;
  gop.relative = to_relative(trajectory);
  gop.kept = subsample(gop.relative);
  gop.deltas = delta_encode(gop.kept.poses);
  gop.quantized = quantize(gop.deltas, fit_quantizer(gop.deltas));
  gop.bytes = write_stream(gop.quantized, trajectory.intrinsics,
                           static_cast<int>(trajectory.frame_count()));
  return gop;
}

PoseTrajectory reconstruct(const PoseStream& stream) {
  const auto kept = reconstruct_kept(dequantize(stream.quantized));
  PoseTrajectory out;
  out.intrinsics = stream.intrinsics;
  out.poses = assemble_trajectory(kept, kept_frame_numbers(stream.frame_count), stream.frame_count);
  return out;
}

PoseTrajectory decode_gop(std::span<const std::uint8_t> bytes) { return reconstruct(read_stream(bytes)); }

}  // namespace posecodec
