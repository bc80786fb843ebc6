#pragma once

#include <charconv>
#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "spintomo/errors.hpp"

namespace spintomo {

/// Exact spin or projection quantum number, stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger integer(int value) { return HalfInteger(2 * value); }

  /// Parses "3/2", "-1/2", "2" or "-1". Decimal forms such as "0.5" are rejected.
  static HalfInteger parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double to_double() const { return 0.5 * twice_; }

  /// Only valid when is_integer().
  constexpr int as_int() const { return twice_ / 2; }

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInteger& operator-=(HalfInteger o) {
    twice_ -= o.twice_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInteger&) const = default;

  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline HalfInteger HalfInteger::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw invalid_argument("not a half-integer: '" + std::string(text) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return HalfInteger(2 * parse_int(text));
  if (text.substr(slash + 1) != "2")
    throw invalid_argument("half-integer denominator must be 2: '" + std::string(text) + "'");
  int numerator = parse_int(text.substr(0, slash));
  if (numerator % 2 == 0)
    throw invalid_argument("write integer spins without a denominator: '" + std::string(text) + "'");
  return HalfInteger(numerator);
}

inline std::ostream& operator<<(std::ostream& os, HalfInteger h) { return os << h.to_string(); }

/// Spin value j: non-negative half-integer.
inline HalfInteger require_spin(HalfInteger j) {
  if (j.twice() < 0) throw invalid_argument("spin must be non-negative, got " + j.to_string());
  return j;
}

/// Dimension 2j+1 of the spin-j irrep.
constexpr int multiplicity(HalfInteger j) { return j.twice() + 1; }

/// Projection m for row/column `index` under the descending order m = j, j-1, ..., -j.
constexpr HalfInteger projection_at(HalfInteger j, int index) {
  return HalfInteger::from_twice(j.twice() - 2 * index);
}

/// Inverse of projection_at. Requires |m| <= j and j - m integral.
constexpr int index_of(HalfInteger j, HalfInteger m) { return (j.twice() - m.twice()) / 2; }

constexpr bool is_projection_of(HalfInteger j, HalfInteger m) {
  return m.twice() <= j.twice() && -m.twice() <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
}

/// All projections of spin j, descending.
inline std::vector<HalfInteger> projections(HalfInteger j) {
  std::vector<HalfInteger> out;
  out.reserve(multiplicity(j));
  for (int i = 0; i < multiplicity(j); ++i) out.push_back(projection_at(j, i));
  return out;
}

/// (-1)^k for integral k = twice/2. Throws if the exponent is half-integral.
inline int parity_sign(HalfInteger exponent) {
  if (!exponent.is_integer())
    throw invalid_argument("(-1)^x with half-integral x = " + exponent.to_string());
  return (std::abs(exponent.as_int()) % 2 == 0) ? 1 : -1;
}

}  // namespace spintomo
