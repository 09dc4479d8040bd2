#pragma once

#include <vector>

#include "posecodec/types.hpp"

namespace posecodec {

/// Shortest-arc spherical interpolation. q_b is negated when the endpoints lie
/// in opposite hemispheres; nearly coincident endpoints (sin(omega) < 1e-6)
/// fall back to normalised linear interpolation. The result is renormalised.
UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b, double t);

/// Midpoint (prev + next) / 2.
Vec3 lerp_translation(const Vec3& prev, const Vec3& next);

/// Midpoint pose: slerp at 1/2 on rotation, midpoint on translation.
CameraExtrinsics interpolate_frame(const CameraExtrinsics& prev, const CameraExtrinsics& next);

/// Pose at fraction t between two neighbours (general gaps).
CameraExtrinsics interpolate_frame(const CameraExtrinsics& prev, const CameraExtrinsics& next, double t);

/// Rebuilds all n frames of a relative trajectory. Frame 1 is the identity
/// anchor, kept frames are copied through untouched, and every other frame is
/// interpolated between its nearest reconstructed neighbours at proportional
/// t. kept_frames are 1-based, strictly increasing, within [2, n], and must end
/// at n. Throws InvalidArgument on inconsistent indices.
std::vector<CameraExtrinsics> assemble_trajectory(const std::vector<CameraExtrinsics>& kept,
                                                  const std::vector<int>& kept_frames, int n);

}  // namespace posecodec
