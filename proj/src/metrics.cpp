#include "posecodec/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "posecodec/container.hpp"
#include "posecodec/errors.hpp"
#include "posecodec/pose_algebra.hpp"

namespace posecodec {

double bpp(std::uint64_t bits, int frames, int width, int height) {
  const double pixels = static_cast<double>(frames) * width * height;
  return static_cast<double>(bits) / pixels;
}

std::int64_t raw_float_count(std::int64_t frames) { return 12 * frames + 4; }

DistortionReport trajectory_distortion(const PoseTrajectory& reference, const PoseTrajectory& reconstructed) {
  if (reference.poses.size() != reconstructed.poses.size()) {
    throw InvalidArgument("trajectory_distortion: length mismatch (" + std::to_string(reference.poses.size()) +
                          " vs " + std::to_string(reconstructed.poses.size()) + ")");
  }
  DistortionReport report;
  double rot_sum = 0.0;
  double trans_sum = 0.0;
  for (std::size_t i = 0; i < reference.poses.size(); ++i) {
    const auto& a = reference.poses[i];
    const auto& b = reconstructed.poses[i];
    FrameDistortion fd;
    fd.frame = static_cast<int>(i) + 1;
    fd.rotation_deg = geodesic_angle(a.rotation, b.rotation) * 180.0 / M_PI;
    fd.translation = (a.translation - b.translation).norm();
    report.max_rotation_deg = std::max(report.max_rotation_deg, fd.rotation_deg);
    report.max_translation = std::max(report.max_translation, fd.translation);
    rot_sum += fd.rotation_deg;
    trans_sum += fd.translation;
    report.frames.push_back(fd);
  }
  if (!report.frames.empty()) {
    const auto n = static_cast<double>(report.frames.size());
    report.mean_rotation_deg = rot_sum / n;
    report.mean_translation = trans_sum / n;
  }
  return report;
}

RateReport rate_report(std::span<const std::uint8_t> container, int frames, int width, int height) {
  const ContainerLayout layout = parse_layout(container);
  RateReport r;
  r.frames = frames;
  r.width = width;
  r.height = height;
  r.kept = kept_count(frames);
  r.symbols = r.kept * 12;
  r.header_bits = 8 * (kFixedHeaderBytes + kIntrinsicsBytes + kBitCountBytes);
  r.quant_param_bits = 8 * kQuantParamBytes;
  r.huffman_table_bits = 8 * layout.table_bytes;
  r.payload_bits = 8 * layout.payload_bytes;
  r.total_bits = stream_size_bits(container);
  if (r.header_bits + r.quant_param_bits + r.huffman_table_bits + r.payload_bits != r.total_bits) {
    throw StreamError("container regions do not cover the stream");
  }
  r.total_bpp = bpp(r.total_bits, frames, width, height);
  return r;
}

RateReport rate_report(std::span<const std::uint8_t> container) {
  const PoseStream stream = read_stream(container);
  return rate_report(container, stream.frame_count, stream.intrinsics.width, stream.intrinsics.height);
}

std::string rate_report_json(const RateReport& r, const DistortionReport* d, const std::string& gop_id) {
  nlohmann::ordered_json doc;
  doc["schema"] = "posecodec.report.v1";
  if (!gop_id.empty()) doc["gop_id"] = gop_id;
  doc["frames"] = r.frames;
  doc["width"] = r.width;
  doc["height"] = r.height;
  doc["kept"] = r.kept;
  doc["symbols"] = r.symbols;
  doc["raw_floats"] = raw_float_count(r.frames);
  auto component = [&r](std::uint64_t bits) {
    return nlohmann::ordered_json{{"bits", bits}, {"bpp", r.component_bpp(bits)}};
  };
  doc["rate"]["header"] = component(r.header_bits);
  doc["rate"]["quant_params"] = component(r.quant_param_bits);
  doc["rate"]["huffman_table"] = component(r.huffman_table_bits);
  doc["rate"]["payload"] = component(r.payload_bits);
  doc["rate"]["total"] = component(r.total_bits);
  if (d) {
    auto& dist = doc["distortion"];
    dist["max_rotation_deg"] = d->max_rotation_deg;
    dist["mean_rotation_deg"] = d->mean_rotation_deg;
    dist["max_translation"] = d->max_translation;
    dist["mean_translation"] = d->mean_translation;
    auto& rows = dist["frames"] = nlohmann::ordered_json::array();
    for (const auto& f : d->frames) {
      rows.push_back({{"frame", f.frame}, {"rotation_deg", f.rotation_deg}, {"translation", f.translation}});
    }
  }
  return doc.dump(2);
}

std::string rate_report_text(const RateReport& r, const DistortionReport* d) {
  std::ostringstream os;
  os << "camera-pose stream  N=" << r.frames << " M=" << r.kept << " " << r.width << "x" << r.height << "\n";
  os << std::left << std::setw(16) << "component" << std::right << std::setw(10) << "bits" << std::setw(14)
     << "BPP" << std::setw(10) << "share" << "\n";
  auto row = [&](const char* name, std::uint64_t bits) {
    os << std::left << std::setw(16) << name << std::right << std::setw(10) << bits << std::setw(14)
       << std::scientific << std::setprecision(3) << r.component_bpp(bits) << std::setw(9) << std::fixed
       << std::setprecision(2) << 100.0 * static_cast<double>(bits) / static_cast<double>(r.total_bits) << "%\n";
  };
  row("header", r.header_bits);
  row("quant params", r.quant_param_bits);
  row("huffman table", r.huffman_table_bits);
  row("payload", r.payload_bits);
  row("total", r.total_bits);
  if (d) {
    os << std::setprecision(6) << std::fixed;
    os << "rotation error    max " << d->max_rotation_deg << " deg, mean " << d->mean_rotation_deg << " deg\n";
    os << "translation error max " << d->max_translation << ", mean " << d->mean_translation << "\n";
  }
  return os.str();
}

}  // namespace posecodec
