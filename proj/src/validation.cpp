#include "posecodec/types.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

namespace posecodec {

Mat3 CameraIntrinsics::matrix() const {
  Mat3 k;
  k << fx, 0.0, cx,
       0.0, fy, cy,
       0.0, 0.0, 1.0;
  return k;
}

CameraIntrinsics centered_intrinsics(double fx, double fy, int width, int height) {
  return {fx, fy, width / 2.0, height / 2.0, width, height};
}

double UnitQuaternion::norm() const { return std::sqrt(dot(*this)); }

PoseEntries flatten(const CameraExtrinsics& pose) {
  PoseEntries e{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) e[r * 4 + c] = pose.rotation.m(r, c);
    e[r * 4 + 3] = pose.translation(r);
  }
  return e;
}

CameraExtrinsics unflatten(const PoseEntries& e) {
  CameraExtrinsics pose;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) pose.rotation.m(r, c) = e[r * 4 + c];
    pose.translation(r) = e[r * 4 + 3];
  }
  return pose;
}

bool is_finite(const CameraExtrinsics& pose) {
  return pose.rotation.m.allFinite() && pose.translation.allFinite();
}

const char* to_string(Invariant invariant) {
  switch (invariant) {
    case Invariant::FrameCount: return "frame-count";
    case Invariant::Intrinsics: return "intrinsics";
    case Invariant::NonFinite: return "finiteness";
    case Invariant::Orthonormality: return "orthonormality";
    case Invariant::Determinant: return "determinant";
  }
  return "unknown";
}

std::string Violation::message() const {
  std::ostringstream os;
  if (frame > 0) os << "frame " << frame << ": ";
  os << to_string(invariant) << " violation";
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

std::vector<Violation> validate_intrinsics(const CameraIntrinsics& k) {
  std::vector<Violation> out;
  auto report = [&](const std::string& what) {
    out.push_back({0, Invariant::Intrinsics, what});
  };
  if (!std::isfinite(k.fx) || !std::isfinite(k.fy) || !std::isfinite(k.cx) ||
      !std::isfinite(k.cy)) {
    report("non-finite intrinsics");
    return out;
  }
  if (k.width <= 0 || k.height <= 0) report("image size must be positive");
  if (!(k.fx > 0.0) || !(k.fy > 0.0)) report("focal lengths must be positive");
  if (k.cx < 0.0 || k.cx > k.width) report("cx outside [0, width]");
  if (k.cy < 0.0 || k.cy > k.height) report("cy outside [0, height]");
  return out;
}

std::vector<Violation> validate_trajectory(const PoseTrajectory& traj) {
  std::vector<Violation> out = validate_intrinsics(traj.intrinsics);
  if (traj.poses.size() < 2) {
    out.push_back({0, Invariant::FrameCount,
                   "need at least 2 frames, got " + std::to_string(traj.poses.size())});
  }
  for (std::size_t i = 0; i < traj.poses.size(); ++i) {
    const int frame = static_cast<int>(i) + 1;
    const auto& pose = traj.poses[i];
    if (!is_finite(pose)) {
      out.push_back({frame, Invariant::NonFinite, "non-finite rotation or translation entry"});
      continue;
    }
    const Mat3& r = pose.rotation.m;
    const double ortho = (r.transpose() * r - Mat3::Identity()).norm();
    if (ortho > kRotationTolerance) {
      std::ostringstream os;
      os << "|R^T R - I|_F = " << ortho;
      out.push_back({frame, Invariant::Orthonormality, os.str()});
    }
    const double det = r.determinant();
    if (std::abs(det - 1.0) > kRotationTolerance) {
      std::ostringstream os;
      os << "det(R) = " << det;
      out.push_back({frame, Invariant::Determinant, os.str()});
    }
  }
  return out;
}

}  // namespace posecodec
