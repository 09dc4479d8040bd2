#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "posecodec/types.hpp"

namespace posecodec {

enum class TrajectoryKind { Orbit, Dolly, Pan, Static, Jittered };

std::optional<TrajectoryKind> parse_kind(std::string_view name);
const char* to_string(TrajectoryKind kind);

struct SynthParams {
  double radius = 2.0;   // scene units
  double speed = 0.05;   // rad/frame for rotating kinds, units/frame for dolly
  double jitter = 0.0;   // per-frame shake: radians on rotation, units on position
  std::uint64_t seed = 1;
  CameraIntrinsics intrinsics = {512.0, 512.0, 256.0, 256.0, 512, 512};
};

/// xorshift64* with a splitmix64-scrambled seed. Fixed constants so corpora
/// are reproducible across platforms and languages.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [-1, 1), 53-bit resolution.
  double symmetric();
  /// Uniform in [0, 1), 53-bit resolution.
  double unit();

 private:
  std::uint64_t state_;
};

/// Deterministic world-to-camera trajectory. Kinds, with k = frame - 1 and
/// camera-to-world rotation Rcw, centre c:
///   static    Rcw = I,                  c = (0, 0, -radius)
///   orbit     Rcw = Ry(speed k),        c = Rcw (0, 0, -radius)   (looks at origin)
///   pan       Rcw = Ry(speed k),        c = (0, 0, -radius)
///   dolly     Rcw = I,                  c = (0, 0, -radius + speed k)
///   jittered  orbit with shake amplitude max(jitter, 1e-2)
/// Jitter multiplies Rcw by exp(jitter * a) and adds jitter * b to c, with a,
/// b drawn uniformly from [-1, 1)^3 per frame.
/// Throws InvalidArgument for n < 2, negative jitter or non-finite params.
PoseTrajectory generate(TrajectoryKind kind, int n, const SynthParams& params = {});

}  // namespace posecodec
