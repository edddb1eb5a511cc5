#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace factexp {

// Exact nonnegative rational with 64-bit parts. Not reduced.
struct Rational {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double to_double() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  std::string to_string() const {
    return std::to_string(numerator) + "/" + std::to_string(denominator);
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const auto lhs = static_cast<unsigned __int128>(a.numerator) * b.denominator;
    const auto rhs = static_cast<unsigned __int128>(b.numerator) * a.denominator;
    return lhs <=> rhs;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

}  // namespace factexp
