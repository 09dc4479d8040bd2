#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace posecodec {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Row-major flattening of a 3x4 extrinsic [R | t]:
//   r00 r01 r02 t0  r10 r11 r12 t1  r20 r21 r22 t2
using PoseEntries = std::array<double, 12>;

/// Shared pinhole intrinsics of a GoP. Only fx, fy, cx, cy count as coded
/// parameters; width and height travel as container metadata.
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 1;
  int height = 1;

  Mat3 matrix() const;

  friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;
};

/// Default intrinsics with the principal point at the image centre.
CameraIntrinsics centered_intrinsics(double fx, double fy, int width, int height);

/// 3x3 rotation. Not enforced at construction so that corrupt input can be
/// represented and reported by validate_trajectory().
struct Rotation3 {
  Mat3 m = Mat3::Identity();

  static Rotation3 identity() { return {}; }
};

/// World-to-camera rigid transform: x_cam = R * x_world + t.
struct CameraExtrinsics {
  Rotation3 rotation;
  Vec3 translation = Vec3::Zero();

  static CameraExtrinsics identity() { return {}; }
};

struct PoseTrajectory {
  CameraIntrinsics intrinsics;
  std::vector<CameraExtrinsics> poses;
  std::string gop_id;

  std::size_t frame_count() const { return poses.size(); }
};

struct UnitQuaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const UnitQuaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
  double norm() const;
  UnitQuaternion operator-() const { return {-w, -x, -y, -z}; }
};

PoseEntries flatten(const CameraExtrinsics& pose);
CameraExtrinsics unflatten(const PoseEntries& entries);

bool is_finite(const CameraExtrinsics& pose);

// ---------------------------------------------------------------------------
// Validation

enum class Invariant {
  FrameCount,
  Intrinsics,
  NonFinite,
  Orthonormality,
  Determinant,
};

const char* to_string(Invariant invariant);

struct Violation {
  int frame = 0;  // 1-based frame number; 0 for trajectory-level issues
  Invariant invariant = Invariant::FrameCount;
  std::string detail;

  std::string message() const;
};

inline constexpr double kRotationTolerance = 1e-6;

/// Collects every broken type invariant. Empty result means the trajectory is
/// accepted by every encoder stage.
std::vector<Violation> validate_trajectory(const PoseTrajectory& trajectory);

std::vector<Violation> validate_intrinsics(const CameraIntrinsics& intrinsics);

}  // namespace posecodec
