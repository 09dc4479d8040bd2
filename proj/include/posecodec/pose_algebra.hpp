#pragma once

#include "posecodec/types.hpp"

namespace posecodec {

/// Rigid inverse via the homogeneous 4x4 lift: (R^T, -R^T t).
CameraExtrinsics invert(const CameraExtrinsics& pose);

/// Homogeneous product a * b projected back to 3x4.
CameraExtrinsics compose(const CameraExtrinsics& a, const CameraExtrinsics& b);

/// Re-anchors the trajectory on its first frame: E'_i = E_1^{-1} E_i.
/// Frame 1 of the result is exactly the identity pose.
PoseTrajectory to_relative(const PoseTrajectory& trajectory);

/// Matrix to unit quaternion, canonicalised to w >= 0. Uses the branch on the
/// largest diagonal term. Throws InvalidArgument when |R^T R - I|_F > 1e-3.
UnitQuaternion rot_to_quat(const Rotation3& rotation);

/// Quaternion to matrix. The input is renormalised; q and -q give the same
/// matrix. Throws InvalidArgument on a zero or non-finite quaternion.
Rotation3 quat_to_rot(const UnitQuaternion& q);

/// Closest rotation in Frobenius norm (orthogonal polar factor with det +1).
/// Throws InvalidArgument for non-finite or rank-deficient input.
Rotation3 nearest_rotation(const Mat3& m);

/// Angle of the relative rotation a^T b, in [0, pi].
double geodesic_angle(const Rotation3& a, const Rotation3& b);

}  // namespace posecodec
