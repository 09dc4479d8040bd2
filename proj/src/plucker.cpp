#include "posecodec/plucker.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Dense>

#include "posecodec/errors.hpp"

namespace posecodec {

Vec3 camera_center(const CameraExtrinsics& pose) {
  return -(pose.rotation.m.transpose() * pose.translation);
}

namespace {

Mat3 inverse_intrinsics(const CameraIntrinsics& k) {
  if (!(std::abs(k.fx) > 0.0) || !(std::abs(k.fy) > 0.0) || !std::isfinite(k.fx) || !std::isfinite(k.fy)) {
    throw InvalidArgument("singular intrinsic matrix");
  }
  Mat3 inv;
  inv << 1.0 / k.fx, 0.0, -k.cx / k.fx,
         0.0, 1.0 / k.fy, -k.cy / k.fy,
         0.0, 0.0, 1.0;
  return inv;
}

Vec3 direction_from(const CameraExtrinsics& pose, const Mat3& k_inv, double u, double v,
                    RayConvention convention) {
  if (convention == RayConvention::Paper) {
    return pose.rotation.m * (k_inv * Vec3(u, v, 1.0)) + pose.translation;
  }
  return (pose.rotation.m.transpose() * (k_inv * Vec3(u + 0.5, v + 0.5, 1.0))).normalized();
}

}  // namespace

Vec3 ray_direction(const CameraExtrinsics& pose, const CameraIntrinsics& intrinsics, double u, double v,
                   RayConvention convention) {
  return direction_from(pose, inverse_intrinsics(intrinsics), u, v, convention);
}

PluckerMap plucker_embedding(const CameraExtrinsics& pose, const CameraIntrinsics& intrinsics, int height,
                             int width, RayConvention convention) {
  if (height < 1 || width < 1) throw InvalidArgument("plucker_embedding: dimensions must be positive");
  const Mat3 k_inv = inverse_intrinsics(intrinsics);
  const Vec3 o = camera_center(pose);

  PluckerMap map;
  map.height = height;
  map.width = width;
  map.data.resize(6 * static_cast<std::size_t>(height) * width);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const Vec3 d = direction_from(pose, k_inv, u, v, convention);
      const Vec3 m = o.cross(d);
      for (int c = 0; c < 3; ++c) {
        map.at(c, v, u) = m(c);
        map.at(c + 3, v, u) = d(c);
      }
    }
  }
  return map;
}

double max_plucker_residual(const PluckerMap& map) {
  double worst = 0.0;
  for (int v = 0; v < map.height; ++v) {
    for (int u = 0; u < map.width; ++u) {
      worst = std::max(worst, std::abs(map.moment(v, u).dot(map.direction(v, u))));
    }
  }
  return worst;
}

std::vector<std::uint8_t> write_plk(const PluckerMap& map, RayConvention convention) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + map.data.size() * 4);
  auto u32 = [&out](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  out.insert(out.end(), {'P', 'L', 'K', '1'});
  u32(static_cast<std::uint32_t>(map.height));
  u32(static_cast<std::uint32_t>(map.width));
  out.push_back(static_cast<std::uint8_t>(convention));
  out.insert(out.end(), {0, 0, 0});
  for (double value : map.data) u32(std::bit_cast<std::uint32_t>(static_cast<float>(value)));
  return out;
}

PlkFile read_plk(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 16) throw StreamError("truncated PLK1 file");
  if (bytes[0] != 'P' || bytes[1] != 'L' || bytes[2] != 'K' || bytes[3] != '1') throw StreamError("bad magic");
  auto u32 = [&bytes](std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
    return v;
  };
  PlkFile file;
  file.map.height = static_cast<int>(u32(4));
  file.map.width = static_cast<int>(u32(8));
  if (bytes[12] > 1) throw StreamError("unknown ray convention");
  file.convention = static_cast<RayConvention>(bytes[12]);
  const std::size_t values = 6ull * file.map.height * file.map.width;
  if (bytes.size() != 16 + values * 4) throw StreamError("PLK1 size does not match dimensions");
  file.map.data.resize(values);
  for (std::size_t i = 0; i < values; ++i) {
    file.map.data[i] = static_cast<double>(std::bit_cast<float>(u32(16 + 4 * i)));
  }
  return file;
}

}  // namespace posecodec
