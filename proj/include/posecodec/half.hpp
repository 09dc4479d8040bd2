#pragma once

#include <cstdint>

namespace posecodec {

/// IEEE 754 binary16 value held as its bit pattern.
struct Half {
  std::uint16_t bits = 0;

  static Half from_double(double value);  // round to nearest, ties to even
  double to_double() const;
  Half next_up() const;  // next representable value toward +infinity

  bool is_finite() const { return (bits & 0x7C00u) != 0x7C00u; }

  friend bool operator==(Half, Half) = default;
};

inline constexpr double kHalfMax = 65504.0;

}  // namespace posecodec
