#pragma once

#include <cstdint>
#include <string>

namespace czindex {

/// Exact half-integer index value, stored as twice its value. Index
/// computations never touch floating point: signatures are integer counts and
/// every index is a sum of half-signature differences.
struct HalfInteger {
  std::int64_t twice = 0;

  static HalfInteger whole(std::int64_t k) { return HalfInteger{2 * k}; }
  static HalfInteger halves(std::int64_t h) { return HalfInteger{h}; }

  bool isInteger() const { return twice % 2 == 0; }

  /// Valid only when isInteger().
  std::int64_t asInteger() const { return twice / 2; }

  double asDouble() const { return static_cast<double>(twice) / 2.0; }

  HalfInteger operator+(HalfInteger o) const { return HalfInteger{twice + o.twice}; }
  HalfInteger operator-(HalfInteger o) const { return HalfInteger{twice - o.twice}; }
  HalfInteger operator-() const { return HalfInteger{-twice}; }
  bool operator==(const HalfInteger&) const = default;

  HalfInteger abs() const { return HalfInteger{twice < 0 ? -twice : twice}; }

  /// Exact rational rendering: "0", "-1", "3/2".
  std::string str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

}  // namespace czindex
