#include <gtest/gtest.h>

#include <json.hpp>

#include "posecodec/codec.hpp"
#include "posecodec/container.hpp"
#include "posecodec/errors.hpp"
#include "posecodec/metrics.hpp"
#include "posecodec/pose_algebra.hpp"
#include "posecodec/synth.hpp"
#include "test_support.hpp"

namespace posecodec {
namespace {

// Second implementation of the distortion metric: angle from the trace of
// the relative rotation, degrees via the same constant.
std::pair<double, double> oracle_means(const PoseTrajectory& a, const PoseTrajectory& b) {
  double rot = 0.0, trans = 0.0;
  for (std::size_t i = 0; i < a.poses.size(); ++i) {
    const Mat3 rel = a.poses[i].rotation.m.transpose() * b.poses[i].rotation.m;
    const double c = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
    rot += std::acos(c) * 180.0 / M_PI;
    trans += (a.poses[i].translation - b.poses[i].translation).norm();
  }
  const double n = static_cast<double>(a.poses.size());
  return {rot / n, trans / n};
}

TEST(Bpp, Examples) {
  EXPECT_NEAR(bpp(1507, 25, 512, 512), 2.30e-4, 0.005e-4);
  EXPECT_EQ(bpp(0, 25, 512, 512), 0.0);
  EXPECT_DOUBLE_EQ(bpp(800, 2, 10, 10), 4.0);
  EXPECT_DOUBLE_EQ(bpp(1507, 50, 512, 512), bpp(1507, 25, 512, 512) / 2);
}

TEST(RawFloatCount, Examples) {
  EXPECT_EQ(raw_float_count(25), 304);
  EXPECT_EQ(raw_float_count(1), 16);
  EXPECT_EQ(raw_float_count(14), 172);
}

TEST(Distortion, IdenticalIsZero) {
  const auto t = generate(TrajectoryKind::Orbit, 10);
  const auto r = trajectory_distortion(t, t);
  EXPECT_EQ(r.max_rotation_deg, 0.0);
  EXPECT_EQ(r.mean_rotation_deg, 0.0);
  EXPECT_EQ(r.max_translation, 0.0);
  EXPECT_EQ(r.frames.size(), 10u);
}

TEST(Distortion, SingleFrameRotatedOneDegree) {
  const int n = 8;
  const auto ref = generate(TrajectoryKind::Pan, n);
  auto rec = ref;
  rec.poses[4].rotation.m = testing::axis_rotation(Vec3::UnitX(), M_PI / 180.0) * rec.poses[4].rotation.m;
  const auto r = trajectory_distortion(ref, rec);
  EXPECT_NEAR(r.max_rotation_deg, 1.0, 1e-12);
  EXPECT_NEAR(r.mean_rotation_deg, 1.0 / n, 1e-12);
  EXPECT_EQ(r.frames[4].frame, 5);
  EXPECT_NEAR(r.frames[4].rotation_deg, 1.0, 1e-12);
}

TEST(Distortion, MatchesOracleOnEncodedCorpus) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthParams p;
    p.seed = seed;
    p.jitter = 1e-3 * static_cast<double>(seed % 5);
    const auto ref = to_relative(generate(TrajectoryKind::Orbit, 5 + static_cast<int>(seed), p));
    const auto rec = decode_gop(encode_gop(ref).bytes);
    const auto r = trajectory_distortion(ref, rec);
    const auto [rot, trans] = oracle_means(ref, rec);
    EXPECT_NEAR(r.mean_rotation_deg, rot, 1e-6);
    EXPECT_NEAR(r.mean_translation, trans, 1e-12);
  }
}

TEST(Distortion, LengthMismatchThrows) {
  EXPECT_THROW(trajectory_distortion(generate(TrajectoryKind::Static, 4), generate(TrajectoryKind::Static, 5)),
               InvalidArgument);
}

TEST(RateReport, ComponentsSumToContainerSize) {
  for (int n : {2, 3, 9, 25, 60}) {
    SynthParams p;
    p.jitter = 2e-3;
    const auto bytes = encode_gop(generate(TrajectoryKind::Jittered, n, p)).bytes;
    const RateReport r = rate_report(bytes);
    EXPECT_EQ(r.header_bits + r.quant_param_bits + r.huffman_table_bits + r.payload_bits, r.total_bits);
    EXPECT_EQ(r.total_bits, stream_size_bits(bytes));
    EXPECT_EQ(r.header_bits, 8u * (14 + 16 + 4));
    EXPECT_EQ(r.quant_param_bits, 8u * 48);
    EXPECT_EQ(r.kept, kept_count(n));
    EXPECT_EQ(r.symbols, 12 * kept_count(n));
    EXPECT_LE(r.payload_bits, static_cast<std::uint64_t>(kept_count(n)) * 12 * 8);
    EXPECT_DOUBLE_EQ(r.total_bpp, bpp(r.total_bits, n, 512, 512));
  }
}

TEST(RateReport, SmoothOrbitWithinPaperBracket) {
  const auto bytes = encode_gop(generate(TrajectoryKind::Orbit, 25)).bytes;
  const RateReport r = rate_report(bytes, 25, 512, 512);
  EXPECT_GE(r.total_bpp, 1.5e-4);
  EXPECT_LE(r.total_bpp, 2.5e-4);
}

TEST(RateReport, MalformedContainerThrows) {
  EXPECT_THROW(rate_report(std::vector<std::uint8_t>{'C', 'P'}), StreamError);
}

TEST(RateReport, JsonDocument) {
  const auto ref = generate(TrajectoryKind::Orbit, 9);
  const auto bytes = encode_gop(ref).bytes;
  const auto rate = rate_report(bytes);
  const auto dist = trajectory_distortion(to_relative(ref), decode_gop(bytes));
  const auto doc = nlohmann::json::parse(rate_report_json(rate, &dist, "gop7"));
  EXPECT_EQ(doc["schema"], "posecodec.report.v1");
  EXPECT_EQ(doc["gop_id"], "gop7");
  EXPECT_EQ(doc["rate"]["total"]["bits"], rate.total_bits);
  EXPECT_EQ(doc["raw_floats"], 112);
  EXPECT_EQ(doc["distortion"]["frames"].size(), 9u);
  EXPECT_FALSE(nlohmann::json::parse(rate_report_json(rate)).contains("distortion"));
  EXPECT_NE(rate_report_text(rate, &dist).find("payload"), std::string::npos);
}

}  // namespace
}  // namespace posecodec
