#include "posecodec/half.hpp"

#include <cmath>
#include <limits>

namespace posecodec {

Half Half::from_double(double value) {
  if (std::isnan(value)) return Half{0x7E00};
  const std::uint16_t sign = std::signbit(value) ? 0x8000u : 0u;
  const double a = std::fabs(value);
  // Anything at or past the midpoint between 65504 and 2^16 rounds to inf.
  if (a >= 65520.0) return Half{static_cast<std::uint16_t>(sign | 0x7C00u)};

  int exp = 0;
  std::frexp(a, &exp);  // a = f * 2^exp, f in [0.5, 1)
  const int e = exp - 1;
  if (a == 0.0) return Half{sign};

  if (e < -14) {
    // Subnormal: quantum 2^-24. A rounded mantissa of 1024 is the smallest
    // normal, whose bit pattern happens to be 0x0400.
    const auto m = static_cast<std::uint16_t>(std::nearbyint(std::ldexp(a, 24)));
    return Half{static_cast<std::uint16_t>(sign | m)};
  }

  auto m = static_cast<int>(std::nearbyint(std::ldexp(a, 10 - e)));  // [1024, 2048]
  int biased = e + 15;
  if (m == 2048) {
    m = 1024;
    ++biased;
  }
  if (biased >= 31) return Half{static_cast<std::uint16_t>(sign | 0x7C00u)};
  return Half{static_cast<std::uint16_t>(sign | (biased << 10) | (m - 1024))};
}

double Half::to_double() const {
  const bool negative = bits & 0x8000u;
  const int biased = (bits >> 10) & 0x1F;
  const int mant = bits & 0x3FF;
  double v;
  if (biased == 0) {
    v = std::ldexp(static_cast<double>(mant), -24);
  } else if (biased == 31) {
    v = mant ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity();
  } else {
    v = std::ldexp(static_cast<double>(1024 + mant), biased - 25);
  }
  return negative ? -v : v;
}

Half Half::next_up() const {
  if (!is_finite()) return *this;
  if (bits == 0x8000u) return Half{0x0001};
  if (bits & 0x8000u) return Half{static_cast<std::uint16_t>(bits - 1)};
  return Half{static_cast<std::uint16_t>(bits + 1)};
}

}  // namespace posecodec
