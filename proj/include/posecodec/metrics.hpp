#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "posecodec/types.hpp"

namespace posecodec {

/// bits / (n * w * h).
double bpp(std::uint64_t bits, int frames, int width, int height);

/// Raw float count of a GoP's camera parameters: 12 per frame plus 4 intrinsics.
std::int64_t raw_float_count(std::int64_t frames);

struct FrameDistortion {
  int frame = 0;  // 1-based
  double rotation_deg = 0.0;
  double translation = 0.0;
};

struct DistortionReport {
  double max_rotation_deg = 0.0;
  double mean_rotation_deg = 0.0;
  double max_translation = 0.0;
  double mean_translation = 0.0;
  std::vector<FrameDistortion> frames;
};

/// Per-frame geodesic angle (degrees) and translation L2 error.
/// Throws InvalidArgument if the trajectories differ in length.
DistortionReport trajectory_distortion(const PoseTrajectory& reference, const PoseTrajectory& reconstructed);

/// Container bits split into disjoint regions. "header" covers the fixed
/// fields, the intrinsics and the payload bit-count field.
struct RateReport {
  std::uint64_t header_bits = 0;
  std::uint64_t quant_param_bits = 0;
  std::uint64_t huffman_table_bits = 0;
  std::uint64_t payload_bits = 0;  // includes the final byte's padding
  std::uint64_t total_bits = 0;
  int frames = 0;
  int width = 0;
  int height = 0;
  int kept = 0;
  int symbols = 0;
  double total_bpp = 0.0;

  double component_bpp(std::uint64_t bits) const { return bpp(bits, frames, width, height); }
};

/// Throws StreamError on a malformed container.
RateReport rate_report(std::span<const std::uint8_t> container, int frames, int width, int height);

/// Uses N, W, H from the container header.
RateReport rate_report(std::span<const std::uint8_t> container);

// Structured report document (JSON) and a human-readable table.
std::string rate_report_json(const RateReport& rate, const DistortionReport* distortion = nullptr,
                             const std::string& gop_id = {});
std::string rate_report_text(const RateReport& rate, const DistortionReport* distortion = nullptr);

}  // namespace posecodec
