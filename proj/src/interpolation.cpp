#include "posecodec/interpolation.hpp"

#include <cmath>
#include <string>

#include "posecodec/errors.hpp"
#include "posecodec/pose_algebra.hpp"

namespace posecodec {

UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b_in, double t) {
  UnitQuaternion b = b_in;
  double dot = a.dot(b);
  if (dot < 0.0) {
    b = -b;
    dot = -dot;
  }
  dot = std::min(dot, 1.0);
  const double omega = std::acos(dot);
  const double sin_omega = std::sin(omega);

  double wa, wb;
  if (sin_omega < 1e-6) {
    wa = 1.0 - t;
    wb = t;
  } else {
    wa = std::sin((1.0 - t) * omega) / sin_omega;
    wb = std::sin(t * omega) / sin_omega;
  }
  UnitQuaternion q{wa * a.w + wb * b.w, wa * a.x + wb * b.x, wa * a.y + wb * b.y,
                   wa * a.z + wb * b.z};
  const double n = q.norm();
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Vec3 lerp_translation(const Vec3& prev, const Vec3& next) { return 0.5 * (prev + next); }

CameraExtrinsics interpolate_frame(const CameraExtrinsics& prev, const CameraExtrinsics& next) {
  CameraExtrinsics out;
  out.rotation = quat_to_rot(slerp(rot_to_quat(prev.rotation), rot_to_quat(next.rotation), 0.5));
  out.translation = lerp_translation(prev.translation, next.translation);
  return out;
}

CameraExtrinsics interpolate_frame(const CameraExtrinsics& prev, const CameraExtrinsics& next, double t) {
  if (t == 0.5) return interpolate_frame(prev, next);
  CameraExtrinsics out;
  out.rotation = quat_to_rot(slerp(rot_to_quat(prev.rotation), rot_to_quat(next.rotation), t));
  out.translation = (1.0 - t) * prev.translation + t * next.translation;
  return out;
}

std::vector<CameraExtrinsics> assemble_trajectory(const std::vector<CameraExtrinsics>& kept,
                                                  const std::vector<int>& kept_frames, int n) {
  if (n < 2) throw InvalidArgument("assemble_trajectory: frame count below 2");
  if (kept.size() != kept_frames.size() || kept.empty()) {
    throw InvalidArgument("assemble_trajectory: kept poses and frame numbers disagree");
  }
  int last = 1;
  for (int f : kept_frames) {
    if (f <= last || f > n) {
      throw InvalidArgument("assemble_trajectory: frame number " + std::to_string(f) +
                            " out of order or range");
    }
    last = f;
  }
  if (last != n) throw InvalidArgument("assemble_trajectory: last kept frame must be the GoP endpoint");

  std::vector<CameraExtrinsics> out(static_cast<std::size_t>(n));
  out[0] = CameraExtrinsics::identity();
  int anchor_frame = 1;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const int f = kept_frames[k];
    out[static_cast<std::size_t>(f - 1)] = kept[k];
    const CameraExtrinsics& prev = out[static_cast<std::size_t>(anchor_frame - 1)];
    const double gap = f - anchor_frame;
    for (int i = anchor_frame + 1; i < f; ++i) {
      out[static_cast<std::size_t>(i - 1)] = interpolate_frame(prev, kept[k], (i - anchor_frame) / gap);
    }
    anchor_frame = f;
  }
  return out;
}

}  // namespace posecodec
