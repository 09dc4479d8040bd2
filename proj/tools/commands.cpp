#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <sstream>

#include <CLI11.hpp>

#include "posecodec/codec.hpp"
#include "posecodec/errors.hpp"
#include "posecodec/metrics.hpp"
#include "posecodec/plucker.hpp"
#include "posecodec/pose_algebra.hpp"
#include "posecodec/synth.hpp"
#include "posecodec/trajectory_io.hpp"

namespace fs = std::filesystem;

namespace posecodec::cli {

namespace {

struct Dims {
  int width = 0;
  int height = 0;
};

Dims parse_dims(const std::string& text) {
  Dims d;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> d.width >> x >> d.height) || x != 'x' || d.width < 1 || d.height < 1 || !in.eof()) {
    throw ParseError(0, "invalid --dims '" + text + "', expected WxH");
  }
  return d;
}

std::string format_bpp(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool has_container_magic(const std::vector<std::uint8_t>& bytes) {
  // "CPSG-TRAJ" text shares the first four bytes; a container has its version byte there instead of '-'.
  return bytes.size() >= 5 && bytes[0] == 'C' && bytes[1] == 'P' && bytes[2] == 'S' && bytes[3] == 'G' &&
         bytes[4] != '-';
}

// Maps library exceptions onto the exit-code table. `stream_code` is the code
// used for container errors in the current command.
int report_failure(std::ostream& err, int stream_code) {
  try {
    throw;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const StreamError& e) {
    err << "container error: " << e.what() << "\n";
    return stream_code;
  } catch (const InvalidArgument& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

PoseTrajectory load_trajectory(const fs::path& path) {
  PoseTrajectory traj = parse_trajectory(read_text_file(path));
  traj.gop_id = path.stem().string();
  return traj;
}

// ---------------------------------------------------------------------------

int encode_file(const fs::path& input, const fs::path& output, const std::string& report, std::ostream& out,
                std::ostream& err) {
  try {
    const PoseTrajectory traj = load_trajectory(input);
    const EncodedGop gop = encode_gop(traj);
    write_file_atomic(output, gop.bytes);
    const RateReport rate = rate_report(gop.bytes, static_cast<int>(traj.frame_count()), traj.intrinsics.width,
                                        traj.intrinsics.height);
    if (report == "json") {
      out << rate_report_json(rate, nullptr, traj.gop_id) << "\n";
    } else {
      out << "gop=" << traj.gop_id << " N=" << rate.frames << " M=" << rate.kept << " bits=" << rate.total_bits
          << " bpp=" << format_bpp(rate.total_bpp) << " out=" << output.string() << "\n";
    }
    return kOk;
  } catch (...) {
    return report_failure(err, kContainerFailure);
  }
}

int decode_file(const fs::path& input, const fs::path& output, std::ostream& out, std::ostream& err) {
  try {
    const auto bytes = read_binary_file(input);
    const PoseTrajectory traj = decode_gop(bytes);
    write_file_atomic(output, serialize_trajectory(traj));
    out << "gop=" << input.stem().string() << " N=" << traj.frame_count() << " out=" << output.string() << "\n";
    return kOk;
  } catch (...) {
    return report_failure(err, kContainerFailure);
  }
}

// Runs `one` per matching file of a directory concurrently; output order is
// deterministic (sorted by file name).
template <typename Fn>
int for_each_in_directory(const fs::path& in_dir, const fs::path& out_dir, const std::string& in_ext,
                          const std::string& out_ext, std::ostream& out, std::ostream& err, Fn one) {
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == in_ext) inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "i/o error: cannot create " << out_dir.string() << "\n";
    return kIoFailure;
  }

  struct Result {
    int code;
    std::string out, err;
  };
  std::vector<std::future<Result>> jobs;
  for (const auto& path : inputs) {
    jobs.push_back(std::async(std::launch::async, [&, path] {
      std::ostringstream o, e;
      fs::path target = out_dir / path.stem();
      target += out_ext;
      const int code = one(path, target, o, e);
      return Result{code, o.str(), e.str()};
    }));
  }
  int worst = kOk;
  for (auto& job : jobs) {
    const Result r = job.get();
    out << r.out;
    err << r.err;
    worst = std::max(worst, r.code);
  }
  return worst;
}

int cmd_encode(const fs::path& input, const fs::path& output, const std::string& report, std::ostream& out,
               std::ostream& err) {
  if (fs::is_directory(input)) {
    return for_each_in_directory(input, output, ".txt", ".cpsg", out, err,
                                 [&report](const fs::path& i, const fs::path& o, std::ostream& so, std::ostream& se) {
                                   return encode_file(i, o, report, so, se);
                                 });
  }
  return encode_file(input, output, report, out, err);
}

int cmd_decode(const fs::path& input, const fs::path& output, std::ostream& out, std::ostream& err) {
  if (fs::is_directory(input)) {
    return for_each_in_directory(input, output, ".cpsg", ".txt", out, err, decode_file);
  }
  return decode_file(input, output, out, err);
}

struct SweepOptions {
  bool enabled = false;
  std::string kind = "orbit";
  std::vector<double> levels = {0.0, 1e-3, 3e-3, 1e-2};
  std::uint64_t seed = 1;
};

std::string sweep_table(int frames, const CameraIntrinsics& intrinsics, const SweepOptions& opt) {
  const auto kind = parse_kind(opt.kind);
  if (!kind) throw ParseError(0, "unknown --kind '" + opt.kind + "'");
  std::ostringstream os;
  os << "jitter,bits,bpp,mean_rotation_deg,max_rotation_deg,mean_translation,max_translation\n";
  for (double level : opt.levels) {
    SynthParams p;
    p.jitter = level;
    p.seed = opt.seed;
    p.intrinsics = intrinsics;
    const PoseTrajectory traj = generate(*kind, frames, p);
    const EncodedGop gop = encode_gop(traj);
    const DistortionReport d = trajectory_distortion(gop.relative, decode_gop(gop.bytes));
    const auto bits = stream_size_bits(gop.bytes);
    char line[256];
    std::snprintf(line, sizeof line, "%.6g,%llu,%.6e,%.9g,%.9g,%.9g,%.9g\n", level,
                  static_cast<unsigned long long>(bits), bpp(bits, frames, intrinsics.width, intrinsics.height),
                  d.mean_rotation_deg, d.max_rotation_deg, d.mean_translation, d.max_translation);
    os << line;
  }
  return os.str();
}

int cmd_eval(const fs::path& reference, const fs::path& container, const std::string& report,
             const SweepOptions& sweep, std::ostream& out, std::ostream& err) {
  try {
    const PoseTrajectory ref = load_trajectory(reference);
    const auto bytes = read_binary_file(container);
    const PoseTrajectory decoded = decode_gop(bytes);
    if (decoded.frame_count() != ref.frame_count()) {
      err << "frame count mismatch: reference N=" << ref.frame_count() << ", container N=" << decoded.frame_count()
          << "\n";
      return kFrameMismatch;
    }
    if (auto violations = validate_trajectory(ref); !violations.empty()) throw ValidationFailed(violations);
    const DistortionReport d = trajectory_distortion(to_relative(ref), decoded);
    const RateReport rate = rate_report(bytes, static_cast<int>(ref.frame_count()), decoded.intrinsics.width,
                                        decoded.intrinsics.height);
    if (report == "json") {
      out << rate_report_json(rate, &d, ref.gop_id) << "\n";
    } else {
      out << rate_report_text(rate, &d);
    }
    if (sweep.enabled) out << sweep_table(static_cast<int>(ref.frame_count()), ref.intrinsics, sweep);
    return kOk;
  } catch (...) {
    return report_failure(err, kContainerFailure);
  }
}

int cmd_plucker(const fs::path& input, const fs::path& out_dir, const std::string& convention_name,
                const std::string& dims_text, std::ostream& out, std::ostream& err) {
  try {
    RayConvention convention;
    if (convention_name == "world") {
      convention = RayConvention::World;
    } else if (convention_name == "paper") {
      convention = RayConvention::Paper;
    } else {
      throw ParseError(0, "unknown --convention '" + convention_name + "'");
    }

    const auto bytes = read_binary_file(input);
    PoseTrajectory traj;
    if (has_container_magic(bytes)) {
      traj = decode_gop(bytes);
    } else {
      traj = parse_trajectory(std::string(bytes.begin(), bytes.end()));
      if (auto violations = validate_trajectory(traj); !violations.empty()) throw ValidationFailed(violations);
    }

    // Rescale intrinsics when the requested map size differs from the image.
    CameraIntrinsics k = traj.intrinsics;
    if (!dims_text.empty()) {
      const Dims d = parse_dims(dims_text);
      const double sx = static_cast<double>(d.width) / k.width;
      const double sy = static_cast<double>(d.height) / k.height;
      k = {k.fx * sx, k.fy * sy, k.cx * sx, k.cy * sy, d.width, d.height};
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string());
    for (std::size_t i = 0; i < traj.poses.size(); ++i) {
      const PluckerMap map = plucker_embedding(traj.poses[i], k, k.height, k.width, convention);
      char name[32];
      std::snprintf(name, sizeof name, "frame_%04zu.plk", i + 1);
      write_file_atomic(out_dir / name, write_plk(map, convention));
    }
    out << "frames=" << traj.poses.size() << " dims=" << k.width << "x" << k.height
        << " convention=" << convention_name << " out=" << out_dir.string() << "\n";
    return kOk;
  } catch (...) {
    return report_failure(err, kContainerFailure);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Camera-pose trajectory codec"};
  app.name("posecodec");
  app.require_subcommand(1);

  std::string input, output, report = "text";

  auto* encode = app.add_subcommand("encode", "Encode a CPSG-TRAJ trajectory (or a directory of them)");
  encode->add_option("-i,--input", input, "Trajectory file or directory")->required();
  encode->add_option("-o,--output", output, "Container file or directory")->required();
  encode->add_option("--report", report, "Summary format")->check(CLI::IsMember({"text", "json"}));

  auto* decode = app.add_subcommand("decode", "Decode a container (or a directory of them)");
  decode->add_option("-i,--input", input, "Container file or directory")->required();
  decode->add_option("-o,--output", output, "Trajectory file or directory")->required();

  std::string reference;
  SweepOptions sweep;
  auto* eval = app.add_subcommand("eval", "Rate-distortion report of a container against its source");
  eval->add_option("-r,--reference", reference, "Reference trajectory")->required();
  eval->add_option("-i,--input", input, "Container")->required();
  eval->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "json"}));
  eval->add_flag("--sweep", sweep.enabled, "Append a synthetic jitter sweep table (CSV)");
  eval->add_option("--kind", sweep.kind, "Sweep trajectory kind");
  eval->add_option("--jitter", sweep.levels, "Sweep jitter levels")->delimiter(',');
  eval->add_option("--seed", sweep.seed, "Sweep seed");

  std::string convention = "world", dims;
  auto* plucker = app.add_subcommand("plucker", "Write per-frame PLK1 Plucker embeddings");
  plucker->add_option("-i,--input", input, "Container or trajectory file")->required();
  plucker->add_option("-o,--output", output, "Output directory")->required();
  plucker->add_option("--convention", convention, "Ray convention")->check(CLI::IsMember({"paper", "world"}));
  plucker->add_option("--dims", dims, "Map size WxH (defaults to the image size)");

  std::string kind = "orbit", synth_dims = "512x512";
  int frames = 25;
  double focal = 0.0;
  SynthParams params;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic trajectory");
  synth->add_option("--kind", kind, "orbit|dolly|pan|static|jittered");
  synth->add_option("-n,--frames", frames, "Frame count");
  synth->add_option("--radius", params.radius, "Orbit radius / camera distance");
  synth->add_option("--speed", params.speed, "Angular (rad/frame) or linear speed");
  synth->add_option("--jitter", params.jitter, "Per-frame shake amplitude");
  synth->add_option("--seed", params.seed, "Generator seed");
  synth->add_option("--dims", synth_dims, "Image size WxH");
  synth->add_option("--focal", focal, "Focal length in pixels (default: image width)");
  synth->add_option("-o,--output", output, "Output trajectory file")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  if (*encode) return cmd_encode(input, output, report, out, err);
  if (*decode) return cmd_decode(input, output, out, err);
  if (*eval) return cmd_eval(reference, input, report, sweep, out, err);
  if (*plucker) return cmd_plucker(input, output, convention, dims, out, err);
  if (*synth) {
    try {
      const auto parsed_kind = parse_kind(kind);
      if (!parsed_kind) throw ParseError(0, "unknown --kind '" + kind + "'");
      const Dims d = parse_dims(synth_dims);
      const double f = focal > 0.0 ? focal : d.width;
      params.intrinsics = centered_intrinsics(f, f, d.width, d.height);
      PoseTrajectory traj;
      try {
        traj = generate(*parsed_kind, frames, params);
      } catch (const InvalidArgument& e) {
        throw ParseError(0, e.what());
      }
      write_file_atomic(output, serialize_trajectory(traj));
      out << "kind=" << kind << " N=" << frames << " seed=" << params.seed << " out=" << output << "\n";
      return kOk;
    } catch (...) {
      return report_failure(err, kContainerFailure);
    }
  }
  return kUsage;
}

}  // namespace posecodec::cli
