#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "posecodec/types.hpp"

namespace posecodec {

enum class RayConvention : std::uint8_t {
  Paper = 0,  // d = R K^-1 [u, v, 1]^T + t, unnormalised, no pixel-centre offset
  World = 1,  // d = normalise(R^T K^-1 [u + 1/2, v + 1/2, 1]^T)
};

/// 6 x H x W ray embedding, channel-major then row-major. Channels are the
/// moment m = o x d followed by the direction d.
struct PluckerMap {
  int height = 0;
  int width = 0;
  std::vector<double> data;

  double& at(int channel, int v, int u) {
    return data[(static_cast<std::size_t>(channel) * height + v) * width + u];
  }
  double at(int channel, int v, int u) const {
    return data[(static_cast<std::size_t>(channel) * height + v) * width + u];
  }
  Vec3 moment(int v, int u) const { return {at(0, v, u), at(1, v, u), at(2, v, u)}; }
  Vec3 direction(int v, int u) const { return {at(3, v, u), at(4, v, u), at(5, v, u)}; }
};

/// Camera centre of a world-to-camera pose, o = -R^T t.
Vec3 camera_center(const CameraExtrinsics& pose);

/// Throws InvalidArgument for a singular intrinsic matrix.
Vec3 ray_direction(const CameraExtrinsics& pose, const CameraIntrinsics& intrinsics, double u, double v,
                   RayConvention convention = RayConvention::World);

PluckerMap plucker_embedding(const CameraExtrinsics& pose, const CameraIntrinsics& intrinsics, int height,
                             int width, RayConvention convention = RayConvention::World);

/// Largest |m . d| over the map.
double max_plucker_residual(const PluckerMap& map);

// PLK1 file: "PLK1", u32 height, u32 width, u8 convention, 3 zero bytes,
// then 6*H*W little-endian binary32 values in PluckerMap order.
std::vector<std::uint8_t> write_plk(const PluckerMap& map, RayConvention convention);

struct PlkFile {
  PluckerMap map;
  RayConvention convention = RayConvention::World;
};

/// Throws StreamError on a malformed file.
PlkFile read_plk(std::span<const std::uint8_t> bytes);

}  // namespace posecodec
