#include "posecodec/container.hpp"

#include <bit>
#include <cstring>
#include <limits>
#include <string>

#include "posecodec/errors.hpp"

namespace posecodec {

namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'P', 'S', 'G'};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v & 0xFF));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }
  void raw(std::span<const std::uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw StreamError("truncated stream");
  }
  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f32() { return static_cast<double>(std::bit_cast<float>(u32())); }

  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint16_t checked_u16(long long v, const char* what) {
  if (v < 0 || v > std::numeric_limits<std::uint16_t>::max()) {
    throw InvalidArgument(std::string("write_stream: ") + what + " does not fit in 16 bits");
  }
  return static_cast<std::uint16_t>(v);
}

struct Header {
  int frame_count = 0;
  CameraIntrinsics intrinsics;
  int kept = 0;
  AffineQuantizerParams params;
};

Header read_header(ByteReader& in) {
  in.need(4);
  for (auto m : kMagic) {
    if (in.u8() != m) throw StreamError("bad magic");
  }
  const auto version = in.u8();
  if (version != kContainerVersion) {
    throw StreamError("unsupported version " + std::to_string(version));
  }
  Header h;
  h.frame_count = in.u16();
  h.intrinsics.width = in.u16();
  h.intrinsics.height = in.u16();
  h.kept = in.u16();
  const auto rule = in.u8();
  if (rule != kKeptRuleAlternateFromEnd) {
    throw StreamError("unsupported kept-index rule " + std::to_string(rule));
  }
  if (h.frame_count < 2) throw StreamError("frame count below 2");
  if (h.kept != kept_count(h.frame_count)) throw StreamError("kept count inconsistent with frame count");
  h.intrinsics.fx = in.f32();
  h.intrinsics.fy = in.f32();
  h.intrinsics.cx = in.f32();
  h.intrinsics.cy = in.f32();
  for (int i = 0; i < kPoseParams; ++i) {
    h.params.scale[i] = Half{in.u16()};
    h.params.bias[i] = Half{in.u16()};
    if (!h.params.scale[i].is_finite() || !h.params.bias[i].is_finite()) {
      throw StreamError("non-finite quantizer parameter");
    }
  }
  return h;
}

}  // namespace

CameraIntrinsics stored_intrinsics(const CameraIntrinsics& k) {
  auto f = [](double v) { return static_cast<double>(static_cast<float>(v)); };
  return {f(k.fx), f(k.fy), f(k.cx), f(k.cy), k.width, k.height};
}

std::vector<std::uint8_t> write_stream(const QuantizedDeltas& q, const CameraIntrinsics& intrinsics,
                                       int frame_count) {
  if (frame_count < 2) throw InvalidArgument("write_stream: frame count below 2");
  const auto m = static_cast<long long>(q.symbols.size());
  if (m != kept_count(frame_count)) {
    throw InvalidArgument("write_stream: kept count " + std::to_string(m) +
                          " inconsistent with frame count " + std::to_string(frame_count));
  }

  ByteWriter out;
  out.raw(kMagic);
  out.u8(kContainerVersion);
  out.u16(checked_u16(frame_count, "frame count"));
  out.u16(checked_u16(intrinsics.width, "width"));
  out.u16(checked_u16(intrinsics.height, "height"));
  out.u16(checked_u16(m, "kept count"));
  out.u8(kKeptRuleAlternateFromEnd);
  out.f32(intrinsics.fx);
  out.f32(intrinsics.fy);
  out.f32(intrinsics.cx);
  out.f32(intrinsics.cy);
  for (int i = 0; i < kPoseParams; ++i) {
    out.u16(q.params.scale[i].bits);
    out.u16(q.params.bias[i].bits);
  }

  const auto symbols = q.flat_symbols();
  const HuffmanTable table = build_table(histogram(symbols));
  BitWriter table_bits;
  write_table(table_bits, table);
  out.raw(table_bits.bytes());

  const EncodedBits payload = encode(symbols, table);
  if (payload.bit_count > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("write_stream: payload bit count overflow");
  }
  out.u32(static_cast<std::uint32_t>(payload.bit_count));
  out.raw(payload.bytes);
  return out.take();
}

ContainerLayout parse_layout(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  read_header(in);

  ContainerLayout layout;
  layout.table_offset = in.pos();
  BitReader table_bits(in.rest());
  try {
    layout.table = read_table(table_bits);
  } catch (const StreamError& e) {
    if (std::string(e.what()) == "stream exhausted") throw StreamError("truncated stream");
    throw;
  }
  layout.table_bytes = (table_bits.position() + 7) / 8;
  in.seek(layout.table_offset + layout.table_bytes);

  layout.payload_bits = in.u32();
  layout.payload_offset = in.pos();
  layout.payload_bytes = (layout.payload_bits + 7) / 8;
  in.need(layout.payload_bytes);
  layout.total_bytes = layout.payload_offset + layout.payload_bytes;
  if (layout.total_bytes != bytes.size()) throw StreamError("trailing bytes after payload");
  return layout;
}

PoseStream read_stream(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const Header header = read_header(in);
  const ContainerLayout layout = parse_layout(bytes);

  const std::size_t count = static_cast<std::size_t>(header.kept) * kPoseParams;
  const auto payload = bytes.subspan(layout.payload_offset, layout.payload_bytes);
  std::vector<std::uint8_t> symbols;
  try {
    symbols = decode(payload, layout.payload_bits, layout.table, count);
  } catch (const StreamError& e) {
    if (std::string(e.what()) == "stream exhausted") throw StreamError("symbol-count mismatch: stream exhausted");
    throw;
  }
  std::size_t used = 0;
  for (auto s : symbols) used += layout.table.lengths[s];
  if (used != layout.payload_bits) throw StreamError("symbol-count mismatch: unused payload bits");

  PoseStream out;
  out.frame_count = header.frame_count;
  out.intrinsics = header.intrinsics;
  out.quantized.params = header.params;
  out.quantized.symbols.resize(header.kept);
  for (std::size_t f = 0; f < out.quantized.symbols.size(); ++f) {
    for (int i = 0; i < kPoseParams; ++i) out.quantized.symbols[f][i] = symbols[f * kPoseParams + i];
  }
  return out;
}

std::uint64_t stream_size_bits(std::span<const std::uint8_t> bytes) { return 8ull * bytes.size(); }

}  // namespace posecodec
