#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "posecodec/errors.hpp"
#include "posecodec/pose_algebra.hpp"
#include "posecodec/quantizer.hpp"
#include "posecodec/synth.hpp"
#include "test_support.hpp"

namespace posecodec {
namespace {

TEST(Subsample, EvenFrameCounts) {
  EXPECT_EQ(kept_frame_numbers(6), (std::vector<int>{2, 4, 6}));
  EXPECT_EQ(kept_frame_numbers(2), (std::vector<int>{2}));
}

TEST(Subsample, OddFrameCountsKeepEndpoint) {
  EXPECT_EQ(kept_frame_numbers(7), (std::vector<int>{3, 5, 7}));
  EXPECT_EQ(kept_frame_numbers(3), (std::vector<int>{3}));
}

TEST(Subsample, EnumerationOracle) {
  for (int n = 2; n <= 300; ++n) {
    std::vector<int> expected;
    for (int f = 2; f <= n; ++f) {
      if ((n - f) % 2 == 0) expected.push_back(f);
    }
    ASSERT_EQ(kept_frame_numbers(n), expected) << n;
    ASSERT_EQ(kept_count(n), static_cast<int>(expected.size()));
    ASSERT_EQ(kept_count(n), static_cast<int>(std::ceil((n - 1) / 2.0)));
  }
}

TEST(Subsample, PicksPosesAndRejectsShortInput) {
  std::mt19937_64 rng(1);
  std::vector<CameraExtrinsics> poses{CameraExtrinsics::identity()};
  for (int i = 0; i < 5; ++i) poses.push_back(testing::random_pose(rng));
  const auto kept = subsample(testing::trajectory_of(poses));
  ASSERT_EQ(kept.frames, (std::vector<int>{2, 4, 6}));
  EXPECT_EQ(flatten(kept.poses[1]), flatten(poses[3]));

  EXPECT_THROW(subsample(testing::trajectory_of({CameraExtrinsics::identity()})), InvalidArgument);
}

TEST(DeltaEncode, IdentityGivesZeroDelta) {
  const auto d = delta_encode({CameraExtrinsics::identity()});
  ASSERT_EQ(d.size(), 1u);
  for (double v : d.deltas[0]) EXPECT_EQ(v, 0.0);
}

TEST(DeltaEncode, TranslationChain) {
  CameraExtrinsics a, b;
  a.translation = Vec3(1, 0, 0);
  b.translation = Vec3(3, 0, 0);
  const auto d = delta_encode({a, b});
  ASSERT_EQ(d.size(), 2u);
  const PoseEntries first{0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0};
  const PoseEntries second{0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(d.deltas[0], first);
  EXPECT_EQ(d.deltas[1], second);
}

TEST(DeltaEncode, PrefixSumReproducesKept) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<CameraExtrinsics> kept;
    for (int i = 0; i < 1 + trial % 12; ++i) kept.push_back(testing::random_pose(rng));
    const auto sums = accumulate_deltas(delta_encode(kept));
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const auto e = flatten(kept[i]);
      for (int k = 0; k < 12; ++k) EXPECT_NEAR(sums[i][k], e[k], 1e-12);
    }
  }
}

TEST(DeltaEncode, Errors) {
  EXPECT_THROW(delta_encode({}), InvalidArgument);
  CameraExtrinsics bad;
  bad.rotation.m(1, 1) = NAN;
  EXPECT_THROW(delta_encode({bad}), InvalidArgument);
}

DeltaSequence random_deltas(std::mt19937_64& rng, int frames, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  DeltaSequence d;
  for (int f = 0; f < frames; ++f) {
    PoseEntries e{};
    for (auto& v : e) v = u(rng);
    d.deltas.push_back(e);
  }
  return d;
}

TEST(FitQuantizer, DegenerateZeros) {
  DeltaSequence d;
  d.deltas.assign(4, PoseEntries{});
  const auto p = fit_quantizer(d);
  for (int i = 0; i < kPoseParams; ++i) {
    EXPECT_EQ(p.scale[i].to_double(), 0.0);
    EXPECT_EQ(p.bias[i].to_double(), 0.0);
  }
}

TEST(FitQuantizer, ConstantParameterKeepsValueAsBias) {
  DeltaSequence d;
  PoseEntries e{};
  e[5] = 0.25;
  d.deltas.assign(3, e);
  const auto p = fit_quantizer(d);
  EXPECT_EQ(p.scale[5].to_double(), 0.0);
  EXPECT_EQ(p.bias[5].to_double(), 0.25);
}

TEST(FitQuantizer, MinMaxRange) {
  DeltaSequence d;
  PoseEntries lo{}, hi{}, mid{};
  lo[0] = -1.0;
  hi[0] = 1.0;
  mid[0] = 0.3;
  d.deltas = {lo, mid, hi};
  const auto p = fit_quantizer(d);
  EXPECT_EQ(p.bias[0].to_double(), -1.0);
  const Half nominal = Half::from_double(2.0 / 255.0);
  EXPECT_TRUE(p.scale[0] == nominal || p.scale[0] == nominal.next_up());
  EXPECT_GE(-1.0 + 255.0 * p.scale[0].to_double(), 1.0);
}

TEST(FitQuantizer, Errors) {
  EXPECT_THROW(fit_quantizer(DeltaSequence{}), InvalidArgument);
  DeltaSequence d;
  PoseEntries e{};
  e[3] = 1e6;
  d.deltas = {e};
  EXPECT_THROW(fit_quantizer(d), InvalidArgument);
  e[3] = INFINITY;
  d.deltas = {e};
  EXPECT_THROW(fit_quantizer(d), InvalidArgument);
}

// Per-entry error bound: s/2 inside the stored range, plus the distance the
// binary16 bias moved away from the true minimum, plus double rounding.
double error_bound(const DeltaSequence& d, const AffineQuantizerParams& p, int i) {
  double lo = d.deltas[0][i];
  for (const auto& e : d.deltas) lo = std::min(lo, e[i]);
  const double s = p.scale[i].to_double();
  const double n = p.bias[i].to_double();
  const double magnitude = std::abs(n) + 255.0 * s;
  return s / 2.0 + std::abs(n - lo) + 4.0 * std::numeric_limits<double>::epsilon() * magnitude;
}

TEST(FitQuantizer, QuantizeDequantizeSweepStaysInBound) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const double spread = std::pow(10.0, -4.0 + 5.0 * (trial % 100) / 100.0);
    const auto d = random_deltas(rng, 1 + trial % 30, spread);
    const auto p = fit_quantizer(d);
    const auto back = dequantize(quantize(d, p));
    for (int i = 0; i < kPoseParams; ++i) {
      const double bound = error_bound(d, p, i);
      for (std::size_t f = 0; f < d.size(); ++f) {
        ASSERT_LE(std::abs(back.deltas[f][i] - d.deltas[f][i]), bound) << trial << " " << i;
      }
    }
  }
}

// Worst-case error of an affine map over every value of [lo, hi], sampled
// densely; the stored levels are n + s*k for k in 0..255.
double sup_error(double lo, double hi, double n, double s) {
  double worst = 0.0;
  constexpr int kSamples = 4001;
  for (int j = 0; j < kSamples; ++j) {
    const double e = lo + (hi - lo) * j / (kSamples - 1);
    const double k = std::clamp(std::round((e - n) / s), 0.0, 255.0);
    worst = std::max(worst, std::abs(n + s * k - e));
  }
  return worst;
}

TEST(FitQuantizer, MinMaxIsOptimalOverIntervalByGridSearch) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 6; ++trial) {
    double lo = u(rng), hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    DeltaSequence d;
    PoseEntries a{}, b{};
    a[0] = lo;
    b[0] = hi;
    d.deltas = {a, b};
    const auto p = fit_quantizer(d);
    const double ours = sup_error(lo, hi, p.bias[0].to_double(), p.scale[0].to_double());

    const double ideal = (hi - lo) / 510.0;
    double best = INFINITY;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        const double n = lo + i * ideal / 10.0;
        const double s = (hi - lo) / 255.0 * (1.0 + j * 0.002);
        best = std::min(best, sup_error(lo, hi, n, s));
      }
    }
    const double slack = std::abs(p.bias[0].to_double() - lo) + std::ldexp(p.scale[0].to_double(), -10) * 255.0;
    EXPECT_LE(ours, best + slack) << lo << " " << hi;
    EXPECT_LE(best, ideal * (1.0 + 1e-3));
  }
}

TEST(Quantize, RangeEndpoints) {
  const Half s = Half::from_double(0.01);
  const Half n = Half::from_double(-0.5);
  EXPECT_EQ(quantize_value(n.to_double(), s, n), 0);
  EXPECT_EQ(quantize_value(n.to_double() + 255 * s.to_double(), s, n), 255);
  EXPECT_EQ(quantize_value(-100.0, s, n), 0);
  EXPECT_EQ(quantize_value(100.0, s, n), 255);
  EXPECT_EQ(quantize_value(3.0, Half{}, n), 0);
}

TEST(Quantize, HalfwayRoundsAwayFromZero) {
  const Half s = Half::from_double(0.5);
  const Half n = Half::from_double(0.0);
  EXPECT_EQ(quantize_value(0.25, s, n), 1);
  EXPECT_EQ(quantize_value(0.75, s, n), 2);
}

TEST(Quantize, RandomWithinRangeHalfStep) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const Half s = Half::from_double(std::ldexp(u(rng) + 0.01, -(i % 12)));
    const Half n = Half::from_double(4.0 * u(rng) - 2.0);
    const double e = n.to_double() + 255.0 * s.to_double() * u(rng);
    const double back = s.to_double() * quantize_value(e, s, n) + n.to_double();
    ASSERT_LE(std::abs(back - e), s.to_double() / 2.0 * (1.0 + 1e-12));
  }
}

TEST(Dequantize, EvaluatesAffineMapAndIsAFixedPoint) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> sym(0, 255);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    QuantizedDeltas q;
    for (int i = 0; i < kPoseParams; ++i) {
      q.params.scale[i] = Half::from_double(std::abs(u(rng)) * 0.05 + 1e-4);
      q.params.bias[i] = Half::from_double(u(rng));
    }
    q.symbols.resize(1 + trial % 10);
    for (auto& row : q.symbols) {
      for (auto& b : row) b = static_cast<std::uint8_t>(sym(rng));
    }
    const auto d = dequantize(q);
    EXPECT_EQ(d.deltas[0][0], q.params.scale[0].to_double() * q.symbols[0][0] + q.params.bias[0].to_double());
    EXPECT_EQ(quantize(d, q.params), q);
  }
}

TEST(Dequantize, ZeroSymbolAndZeroScale) {
  QuantizedDeltas q;
  q.params.bias[2] = Half::from_double(0.125);
  q.params.scale[2] = Half{};
  q.symbols.assign(3, SymbolRow{});
  for (const auto& e : dequantize(q).deltas) EXPECT_EQ(e[2], 0.125);
}

TEST(ReconstructKept, ZeroDeltasGiveIdentity) {
  DeltaSequence d;
  d.deltas.assign(4, PoseEntries{});
  for (const auto& p : reconstruct_kept(d)) {
    EXPECT_TRUE(p.rotation.m.isIdentity(0.0));
    EXPECT_TRUE(p.translation.isZero(0.0));
  }
}

TEST(ReconstructKept, ExactDeltasReproduceKept) {
  std::mt19937_64 rng(7);
  std::vector<CameraExtrinsics> kept;
  for (int i = 0; i < 12; ++i) kept.push_back(testing::random_pose(rng));
  const auto back = reconstruct_kept(delta_encode(kept));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    EXPECT_LT(testing::max_abs_diff(back[i], kept[i]), 1e-9);
    EXPECT_LT((back[i].rotation.m.transpose() * back[i].rotation.m - Mat3::Identity()).norm(), 1e-14);
  }
}

TEST(ReconstructKept, QuantizedSmoothOrbitStaysClose) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthParams params;
    params.seed = seed;
    params.jitter = 1e-3;
    const auto rel = to_relative(generate(TrajectoryKind::Orbit, 25, params));
    const auto kept = subsample(rel);
    const auto deltas = delta_encode(kept.poses);
    const auto back = reconstruct_kept(dequantize(quantize(deltas, fit_quantizer(deltas))));
    for (std::size_t i = 0; i < back.size(); ++i) {
      // Frozen from a sweep over seeds 1..200 (worst observed 8.7e-4 rad).
      EXPECT_LT(geodesic_angle(back[i].rotation, kept.poses[i].rotation), 1.5e-3);
    }
  }
}

TEST(ReconstructKept, RejectsCollapsedRotation) {
  DeltaSequence d;
  PoseEntries e{};
  e[0] = -1.0;  // r00 -> 0, rank 2
  d.deltas = {e};
  EXPECT_THROW(reconstruct_kept(d), InvalidArgument);
  EXPECT_THROW(reconstruct_kept(DeltaSequence{}), InvalidArgument);
}

}  // namespace
}  // namespace posecodec
