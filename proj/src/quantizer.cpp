#include "posecodec/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "posecodec/errors.hpp"
#include "posecodec/pose_algebra.hpp"

namespace posecodec {

std::vector<int> kept_frame_numbers(int frame_count) {
  if (frame_count < 2) {
    throw InvalidArgument("subsample: need at least 2 frames, got " + std::to_string(frame_count));
  }
  std::vector<int> frames;
  for (int f = (frame_count % 2 == 0) ? 2 : 3; f <= frame_count; f += 2) frames.push_back(f);
  return frames;
}

int kept_count(int frame_count) { return frame_count / 2; }

KeptPoses subsample(const PoseTrajectory& relative) {
  KeptPoses kept;
  kept.frames = kept_frame_numbers(static_cast<int>(relative.poses.size()));
  kept.poses.reserve(kept.frames.size());
  for (int f : kept.frames) kept.poses.push_back(relative.poses[static_cast<std::size_t>(f - 1)]);
  return kept;
}

DeltaSequence delta_encode(const std::vector<CameraExtrinsics>& kept) {
  if (kept.empty()) throw InvalidArgument("delta_encode: empty kept list");
  DeltaSequence out;
  out.deltas.reserve(kept.size());
  PoseEntries prev = flatten(CameraExtrinsics::identity());
  for (const auto& pose : kept) {
    if (!is_finite(pose)) throw InvalidArgument("delta_encode: non-finite pose");
    const PoseEntries cur = flatten(pose);
    PoseEntries d{};
    for (int i = 0; i < kPoseParams; ++i) d[i] = cur[i] - prev[i];
    out.deltas.push_back(d);
    prev = cur;
  }
  return out;
}

std::vector<std::uint8_t> QuantizedDeltas::flat_symbols() const {
  std::vector<std::uint8_t> flat;
  flat.reserve(symbols.size() * kPoseParams);
  for (const auto& row : symbols) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

AffineQuantizerParams fit_quantizer(const DeltaSequence& deltas) {
  if (deltas.deltas.empty()) throw InvalidArgument("fit_quantizer: empty delta sequence");
  AffineQuantizerParams params;
  for (int i = 0; i < kPoseParams; ++i) {
    double lo = deltas.deltas.front()[i];
    double hi = lo;
    for (const auto& d : deltas.deltas) {
      if (!std::isfinite(d[i])) throw InvalidArgument("fit_quantizer: non-finite delta");
      lo = std::min(lo, d[i]);
      hi = std::max(hi, d[i]);
    }
    if (std::abs(lo) > kHalfMax || std::abs(hi) > kHalfMax) {
      throw InvalidArgument("fit_quantizer: delta range exceeds binary16 (parameter " +
                            std::to_string(i) + ")");
    }

    const Half bias = Half::from_double(lo);
    Half scale{};
    if (hi > lo) {
      const double b = bias.to_double();
      scale = Half::from_double(std::max(0.0, (hi - b) / kMaxSymbol));
      while (b + kMaxSymbol * scale.to_double() < hi) scale = scale.next_up();
      if (!scale.is_finite()) {
        throw InvalidArgument("fit_quantizer: scale exceeds binary16 (parameter " +
                              std::to_string(i) + ")");
      }
    }
    params.scale[i] = scale;
    params.bias[i] = bias;
  }
  return params;
}

std::uint8_t quantize_value(double value, Half scale, Half bias) {
  const double s = scale.to_double();
  if (s == 0.0 || std::isnan(value)) return 0;
  const double b = std::round((value - bias.to_double()) / s);  // half away from zero
  return static_cast<std::uint8_t>(std::clamp(b, 0.0, static_cast<double>(kMaxSymbol)));
}

QuantizedDeltas quantize(const DeltaSequence& deltas, const AffineQuantizerParams& params) {
  for (int i = 0; i < kPoseParams; ++i) {
    if (!params.scale[i].is_finite() || !params.bias[i].is_finite()) {
      throw InvalidArgument("quantize: non-finite quantizer parameters");
    }
  }
  QuantizedDeltas out;
  out.params = params;
  out.symbols.reserve(deltas.size());
  for (const auto& d : deltas.deltas) {
    SymbolRow row{};
    for (int i = 0; i < kPoseParams; ++i) row[i] = quantize_value(d[i], params.scale[i], params.bias[i]);
    out.symbols.push_back(row);
  }
  return out;
}

DeltaSequence dequantize(const QuantizedDeltas& q) {
  DeltaSequence out;
  out.deltas.reserve(q.symbols.size());
  for (const auto& row : q.symbols) {
    PoseEntries e{};
    for (int i = 0; i < kPoseParams; ++i) {
      e[i] = q.params.scale[i].to_double() * row[i] + q.params.bias[i].to_double();
    }
    out.deltas.push_back(e);
  }
  return out;
}

std::vector<PoseEntries> accumulate_deltas(const DeltaSequence& deltas) {
  std::vector<PoseEntries> sums;
  sums.reserve(deltas.size());
  PoseEntries acc = flatten(CameraExtrinsics::identity());
  for (const auto& d : deltas.deltas) {
    for (int i = 0; i < kPoseParams; ++i) acc[i] += d[i];
    sums.push_back(acc);
  }
  return sums;
}

std::vector<CameraExtrinsics> reconstruct_kept(const DeltaSequence& deltas) {
  if (deltas.deltas.empty()) throw InvalidArgument("reconstruct_kept: empty delta sequence");
  std::vector<CameraExtrinsics> kept;
  kept.reserve(deltas.size());
  for (const auto& sum : accumulate_deltas(deltas)) {
    CameraExtrinsics pose = unflatten(sum);
    pose.rotation = nearest_rotation(pose.rotation.m);
    kept.push_back(pose);
  }
  return kept;
}

}  // namespace posecodec
