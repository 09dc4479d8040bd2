#include "posecodec/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "posecodec/errors.hpp"

namespace posecodec {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

double parse_real(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) throw ParseError(line, "non-finite value '" + std::string(field) + "'");
  return value;
}

int parse_count(std::string_view field, std::size_t line, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 1) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

PoseTrajectory parse_trajectory(std::string_view text) {
  PoseTrajectory traj;
  int expected_frames = -1;
  bool have_intrinsics = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_fields(line);
    if (fields.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (expected_frames < 0) {
      if (fields.size() != 5 || fields[0] != "CPSG-TRAJ" || fields[1] != "v1") {
        throw ParseError(line_no, "expected header 'CPSG-TRAJ v1 N W H'");
      }
      expected_frames = parse_count(fields[2], line_no, "frame count");
      traj.intrinsics.width = parse_count(fields[3], line_no, "width");
      traj.intrinsics.height = parse_count(fields[4], line_no, "height");
    } else if (!have_intrinsics) {
      if (fields.size() != 2 && fields.size() != 4) {
        throw ParseError(line_no, "expected 4 intrinsics fields (fx fy cx cy), got " + std::to_string(fields.size()));
      }
      traj.intrinsics.fx = parse_real(fields[0], line_no);
      traj.intrinsics.fy = parse_real(fields[1], line_no);
      if (fields.size() == 4) {
        traj.intrinsics.cx = parse_real(fields[2], line_no);
        traj.intrinsics.cy = parse_real(fields[3], line_no);
      } else {
        traj.intrinsics.cx = traj.intrinsics.width / 2.0;
        traj.intrinsics.cy = traj.intrinsics.height / 2.0;
      }
      have_intrinsics = true;
    } else {
      if (traj.poses.size() == static_cast<std::size_t>(expected_frames)) {
        throw ParseError(line_no, "more pose lines than the header's N = " + std::to_string(expected_frames));
      }
      if (fields.size() != 12) {
        throw ParseError(line_no, "expected 12 pose fields, got " + std::to_string(fields.size()));
      }
      PoseEntries e{};
      for (std::size_t i = 0; i < 12; ++i) e[i] = parse_real(fields[i], line_no);
      traj.poses.push_back(unflatten(e));
    }
    if (eol == text.size()) break;
  }

  if (expected_frames < 0) throw ParseError(line_no, "missing header");
  if (!have_intrinsics) throw ParseError(line_no, "missing intrinsics line");
  if (traj.poses.size() != static_cast<std::size_t>(expected_frames)) {
    throw ParseError(line_no, "expected " + std::to_string(expected_frames) + " pose lines, found " +
                                  std::to_string(traj.poses.size()));
  }
  return traj;
}

std::string serialize_trajectory(const PoseTrajectory& traj) {
  std::string out;
  char buf[64];
  auto append_real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  };
  out += "CPSG-TRAJ v1 " + std::to_string(traj.poses.size()) + " " + std::to_string(traj.intrinsics.width) + " " +
         std::to_string(traj.intrinsics.height) + "\n";
  const double k[4] = {traj.intrinsics.fx, traj.intrinsics.fy, traj.intrinsics.cx, traj.intrinsics.cy};
  for (int i = 0; i < 4; ++i) {
    if (i) out += ' ';
    append_real(k[i]);
  }
  out += '\n';
  for (const auto& pose : traj.poses) {
    const auto e = flatten(pose);
    for (int i = 0; i < 12; ++i) {
      if (i) out += ' ';
      append_real(e[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void write_atomic(const std::filesystem::path& path, const char* data, std::size_t size) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(data, static_cast<std::streamsize>(size));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  write_atomic(path, contents.data(), contents.size());
}

void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& contents) {
  write_atomic(path, reinterpret_cast<const char*>(contents.data()), contents.size());
}

}  // namespace posecodec
