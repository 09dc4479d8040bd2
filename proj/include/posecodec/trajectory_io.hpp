#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "posecodec/errors.hpp"
#include "posecodec/types.hpp"

namespace posecodec {

// CPSG-TRAJ v1 text interchange format:
//
//   CPSG-TRAJ v1 <N> <W> <H>
//   <fx> <fy> [<cx> <cy>]          (cx, cy default to W/2, H/2)
//   <r00 r01 r02 t0 r10 r11 r12 t1 r20 r21 r22 t2>   x N, world-to-camera
//
// '#' starts a comment running to end of line; blank lines are ignored.

/// Throws ParseError naming the 1-based line of the first problem.
PoseTrajectory parse_trajectory(std::string_view text);

/// 17 significant digits, so parse(serialize(t)) == t exactly.
std::string serialize_trajectory(const PoseTrajectory& trajectory);

// File helpers. Failures throw IoError; writes go to a temp file that is
// renamed into place.

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& contents);

}  // namespace posecodec
