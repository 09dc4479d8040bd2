#include "posecodec/synth.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "posecodec/errors.hpp"

namespace posecodec {

std::optional<TrajectoryKind> parse_kind(std::string_view name) {
  if (name == "orbit") return TrajectoryKind::Orbit;
  if (name == "dolly") return TrajectoryKind::Dolly;
  if (name == "pan") return TrajectoryKind::Pan;
  if (name == "static") return TrajectoryKind::Static;
  if (name == "jittered") return TrajectoryKind::Jittered;
  return std::nullopt;
}

const char* to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::Orbit: return "orbit";
    case TrajectoryKind::Dolly: return "dolly";
    case TrajectoryKind::Pan: return "pan";
    case TrajectoryKind::Static: return "static";
    case TrajectoryKind::Jittered: return "jittered";
  }
  return "unknown";
}

XorShift64Star::XorShift64Star(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;  // splitmix64
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  state_ = z ? z : 0x9E3779B97F4A7C15ull;
}

std::uint64_t XorShift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

double XorShift64Star::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double XorShift64Star::symmetric() { return 2.0 * unit() - 1.0; }

namespace {

Mat3 rot_y(double angle) { return Eigen::AngleAxisd(angle, Vec3::UnitY()).toRotationMatrix(); }

Mat3 exp_so3(const Vec3& w) {
  const double angle = w.norm();
  if (angle == 0.0) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

}  // namespace

PoseTrajectory generate(TrajectoryKind kind, int n, const SynthParams& p) {
  if (n < 2) throw InvalidArgument("generate: need at least 2 frames");
  if (!std::isfinite(p.radius) || !std::isfinite(p.speed) || !std::isfinite(p.jitter)) {
    throw InvalidArgument("generate: non-finite parameter");
  }
  if (p.jitter < 0.0) throw InvalidArgument("generate: jitter must be non-negative");

  const double jitter = kind == TrajectoryKind::Jittered ? std::max(p.jitter, 1e-2) : p.jitter;
  XorShift64Star rng(p.seed);

  PoseTrajectory traj;
  traj.intrinsics = p.intrinsics;
  traj.gop_id = std::string(to_string(kind)) + "-" + std::to_string(p.seed);
  traj.poses.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Mat3 r_cw = Mat3::Identity();
    Vec3 center(0.0, 0.0, -p.radius);
    switch (kind) {
      case TrajectoryKind::Static:
        break;
      case TrajectoryKind::Orbit:
      case TrajectoryKind::Jittered:
        r_cw = rot_y(p.speed * k);
        center = r_cw * Vec3(0.0, 0.0, -p.radius);
        break;
      case TrajectoryKind::Pan:
        r_cw = rot_y(p.speed * k);
        break;
      case TrajectoryKind::Dolly:
        center.z() += p.speed * k;
        break;
    }
    Vec3 shake_rot, shake_pos;
    for (int i = 0; i < 3; ++i) shake_rot(i) = rng.symmetric();
    for (int i = 0; i < 3; ++i) shake_pos(i) = rng.symmetric();
    if (jitter > 0.0) {
      r_cw = r_cw * exp_so3(jitter * shake_rot);
      center += jitter * shake_pos;
    }

    CameraExtrinsics pose;
    pose.rotation.m = r_cw.transpose();
    pose.translation = -(pose.rotation.m * center);
    traj.poses.push_back(pose);
  }
  return traj;
}

}  // namespace posecodec
