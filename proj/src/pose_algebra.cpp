#include "posecodec/pose_algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "posecodec/errors.hpp"

namespace posecodec {

namespace {

void require_finite(const CameraExtrinsics& pose, const char* op) {
  if (!is_finite(pose)) throw InvalidArgument(std::string(op) + ": non-finite pose");
}

}  // namespace

CameraExtrinsics invert(const CameraExtrinsics& pose) {
  require_finite(pose, "invert");
  CameraExtrinsics out;
  out.rotation.m = pose.rotation.m.transpose();
  out.translation = -(out.rotation.m * pose.translation);
  return out;
}

CameraExtrinsics compose(const CameraExtrinsics& a, const CameraExtrinsics& b) {
  require_finite(a, "compose");
  require_finite(b, "compose");
  CameraExtrinsics out;
  out.rotation.m = a.rotation.m * b.rotation.m;
  out.translation = a.rotation.m * b.translation + a.translation;
  return out;
}

PoseTrajectory to_relative(const PoseTrajectory& trajectory) {
  PoseTrajectory out;
  out.intrinsics = trajectory.intrinsics;
  out.gop_id = trajectory.gop_id;
  if (trajectory.poses.empty()) return out;

  const CameraExtrinsics anchor = invert(trajectory.poses.front());
  out.poses.reserve(trajectory.poses.size());
  out.poses.push_back(CameraExtrinsics::identity());
  for (std::size_t i = 1; i < trajectory.poses.size(); ++i) {
    out.poses.push_back(compose(anchor, trajectory.poses[i]));
  }
  return out;
}

UnitQuaternion rot_to_quat(const Rotation3& rotation) {
  const Mat3& m = rotation.m;
  if (!m.allFinite()) throw InvalidArgument("rot_to_quat: non-finite matrix");
  if ((m.transpose() * m - Mat3::Identity()).norm() > 1e-3) {
    throw InvalidArgument("rot_to_quat: matrix is not orthonormal");
  }

  UnitQuaternion q;
  const double trace = m.trace();
  if (trace >= m(0, 0) && trace >= m(1, 1) && trace >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + trace);
    q.w = 0.25 * s;
    q.x = (m(2, 1) - m(1, 2)) / s;
    q.y = (m(0, 2) - m(2, 0)) / s;
    q.z = (m(1, 0) - m(0, 1)) / s;
  } else if (m(0, 0) >= m(1, 1) && m(0, 0) >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2));
    q.w = (m(2, 1) - m(1, 2)) / s;
    q.x = 0.25 * s;
    q.y = (m(0, 1) + m(1, 0)) / s;
    q.z = (m(0, 2) + m(2, 0)) / s;
  } else if (m(1, 1) >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(1, 1) - m(0, 0) - m(2, 2));
    q.w = (m(0, 2) - m(2, 0)) / s;
    q.x = (m(0, 1) + m(1, 0)) / s;
    q.y = 0.25 * s;
    q.z = (m(1, 2) + m(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + m(2, 2) - m(0, 0) - m(1, 1));
    q.w = (m(1, 0) - m(0, 1)) / s;
    q.x = (m(0, 2) + m(2, 0)) / s;
    q.y = (m(1, 2) + m(2, 1)) / s;
    q.z = 0.25 * s;
  }

  const double n = q.norm();
  q = {q.w / n, q.x / n, q.y / n, q.z / n};
  if (q.w < 0.0) q = -q;
  return q;
}

Rotation3 quat_to_rot(const UnitQuaternion& in) {
  const double n = in.norm();
  if (!std::isfinite(n) || n == 0.0) throw InvalidArgument("quat_to_rot: zero or non-finite quaternion");
  const double w = in.w / n, x = in.x / n, y = in.y / n, z = in.z / n;

  Rotation3 r;
  r.m << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
         2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
         2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y);
  return r;
}

Rotation3 nearest_rotation(const Mat3& m) {
  if (!m.allFinite()) throw InvalidArgument("nearest_rotation: non-finite matrix");
  const double det = m.determinant();
  if (!(std::abs(det) > 1e-6)) throw InvalidArgument("nearest_rotation: rank-deficient matrix");

  // Scaled Newton iteration X <- (g X + X^{-T} / g) / 2 converges
  // quadratically to the orthogonal polar factor U of m = U H.
  Mat3 x = m;
  for (int iter = 0; iter < 100; ++iter) {
    const Mat3 inv_t = x.inverse().transpose();
    const double gamma = std::sqrt(inv_t.norm() / x.norm());
    const Mat3 next = 0.5 * (gamma * x + inv_t / gamma);
    const double change = (next - x).norm();
    x = next;
    if (change < 1e-15) break;
  }
  // One unscaled step cleans up residual drift from the scaling factor.
  x = 0.5 * (x + x.inverse().transpose());

  if (det > 0.0) return Rotation3{x};

  // det(m) < 0: U is a reflection. The nearest rotation flips the direction
  // of the smallest eigenvalue of the symmetric factor H = U^T m.
  const Mat3 h = x.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Mat3> eig(0.5 * (h + h.transpose()));
  const Vec3 v = eig.eigenvectors().col(0);
  return Rotation3{x * (Mat3::Identity() - 2.0 * v * v.transpose())};
}

double geodesic_angle(const Rotation3& a, const Rotation3& b) {
  const Mat3 rel = a.m.transpose() * b.m;
  // atan2 form of arccos((tr - 1) / 2); keeps precision for small angles.
  const double cos_part = 0.5 * (rel.trace() - 1.0);
  const Vec3 axis(rel(2, 1) - rel(1, 2), rel(0, 2) - rel(2, 0), rel(1, 0) - rel(0, 1));
  const double sin_part = 0.5 * axis.norm();
  return std::clamp(std::atan2(sin_part, cos_part), 0.0, M_PI);
}

}  // namespace posecodec
