#include <gtest/gtest.h>

#include "posecodec/codec.hpp"
#include "posecodec/errors.hpp"
#include "posecodec/huffman.hpp"
#include "posecodec/pose_algebra.hpp"
#include "posecodec/synth.hpp"

namespace posecodec {
namespace {

const TrajectoryKind kAllKinds[] = {TrajectoryKind::Orbit, TrajectoryKind::Dolly, TrajectoryKind::Pan,
                                    TrajectoryKind::Static, TrajectoryKind::Jittered};

TEST(XorShift64Star, ReferenceVectors) {
  // Computed with an arbitrary-precision reimplementation; the seed-0 state is
  // the well-known first splitmix64 output 0xE220A8397B1DCDAF.
  XorShift64Star zero(0);
  EXPECT_EQ(zero.next(), 0x7bbcb40d550682d0ull);
  EXPECT_EQ(zero.next(), 0xde7fe413d00cc9fdull);
  EXPECT_EQ(zero.next(), 0xb3c638353c668c91ull);
  XorShift64Star one(1);
  EXPECT_EQ(one.next(), 0x4b46a55df3611b9bull);
  EXPECT_EQ(one.next(), 0xd7e1f1410e763ef4ull);
}

TEST(XorShift64Star, UniformRanges) {
  XorShift64Star rng(42);
  double lo = 1, hi = -1, sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double s = rng.symmetric();
    ASSERT_GE(s, -1.0);
    ASSERT_LT(s, 1.0);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    sum += s;
  }
  EXPECT_LT(lo, -0.999);
  EXPECT_GT(hi, 0.999);
  EXPECT_NEAR(sum / 100000, 0.0, 0.01);
}

TEST(Kinds, ParseAndName) {
  for (auto k : kAllKinds) EXPECT_EQ(parse_kind(to_string(k)), k);
  EXPECT_FALSE(parse_kind("spiral"));
}

TEST(Generate, StaticFramesIdentical) {
  for (int n : {2, 7, 30}) {
    const auto t = generate(TrajectoryKind::Static, n);
    ASSERT_EQ(t.frame_count(), n);
    for (const auto& p : t.poses) EXPECT_EQ(flatten(p), flatten(t.poses[0]));
  }
}

TEST(Generate, StaticUsesSingleSymbolAlphabet) {
  const auto gop = encode_gop(generate(TrajectoryKind::Static, 25));
  const auto h = histogram(gop.quantized.flat_symbols());
  EXPECT_EQ(std::count_if(h.begin(), h.end(), [](auto c) { return c > 0; }), 1);
}

TEST(Generate, OrbitStepsMatchClosedForm) {
  const auto t = generate(TrajectoryKind::Orbit, 25);
  for (int i = 1; i < 25; ++i) {
    EXPECT_NEAR(geodesic_angle(t.poses[i - 1].rotation, t.poses[i].rotation), 0.05, 1e-9);
    // Closed form: centre on the circle of radius 2 in the xz-plane.
    const double a = 0.05 * i;
    const Vec3 c(-2.0 * std::sin(a), 0.0, -2.0 * std::cos(a));
    EXPECT_LT((-(t.poses[i].rotation.m.transpose() * t.poses[i].translation) - c).norm(), 1e-12);
  }
}

TEST(Generate, OrbitLooksAtOrigin) {
  const auto t = generate(TrajectoryKind::Orbit, 40);
  for (const auto& p : t.poses) {
    // The origin maps onto the optical axis at depth radius.
    EXPECT_LT((p.translation - Vec3(0, 0, 2)).norm(), 1e-12);
  }
}

TEST(Generate, ZeroJitterDeltasAreConstant) {
  for (auto kind : {TrajectoryKind::Pan, TrajectoryKind::Dolly, TrajectoryKind::Orbit}) {
    const auto t = generate(kind, 12);
    const auto step = compose(t.poses[1], invert(t.poses[0]));
    for (int i = 2; i < 12; ++i) {
      const auto s = compose(t.poses[i], invert(t.poses[i - 1]));
      if (kind == TrajectoryKind::Orbit) {
        EXPECT_NEAR(geodesic_angle(s.rotation, step.rotation), 0.0, 1e-12);
        EXPECT_NEAR((s.translation - step.translation).norm(), 0.0, 1e-12);
      } else {
        for (int k = 0; k < 12; ++k) EXPECT_NEAR(flatten(s)[k], flatten(step)[k], 1e-12);
      }
    }
  }
}

TEST(Generate, DeterministicPerSeed) {
  SynthParams p;
  p.jitter = 5e-3;
  p.seed = 99;
  for (auto kind : kAllKinds) {
    const auto a = generate(kind, 20, p);
    const auto b = generate(kind, 20, p);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(flatten(a.poses[i]), flatten(b.poses[i]));
  }
  auto q = p;
  q.seed = 100;
  EXPECT_NE(flatten(generate(TrajectoryKind::Orbit, 5, p).poses[3]),
            flatten(generate(TrajectoryKind::Orbit, 5, q).poses[3]));
}

TEST(Generate, JitteredHasMinimumShake) {
  const auto smooth = generate(TrajectoryKind::Orbit, 10);
  const auto shaky = generate(TrajectoryKind::Jittered, 10);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    worst = std::max(worst, geodesic_angle(smooth.poses[i].rotation, shaky.poses[i].rotation));
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(Generate, AlwaysValid) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SynthParams p;
    p.seed = seed;
    p.jitter = 0.02 * static_cast<double>(seed % 4);
    p.radius = 0.5 + static_cast<double>(seed);
    for (auto kind : kAllKinds) {
      EXPECT_TRUE(validate_trajectory(generate(kind, 2 + static_cast<int>(seed), p)).empty());
    }
  }
}

TEST(Generate, RejectsBadParams) {
  EXPECT_THROW(generate(TrajectoryKind::Orbit, 1), InvalidArgument);
  SynthParams p;
  p.jitter = -1;
  EXPECT_THROW(generate(TrajectoryKind::Orbit, 5, p), InvalidArgument);
  p.jitter = 0;
  p.radius = std::nan("");
  EXPECT_THROW(generate(TrajectoryKind::Orbit, 5, p), InvalidArgument);
}

}  // namespace
}  // namespace posecodec
