#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace factexp {

// Base-b digits of a nonnegative integer, least significant first.
// Canonical: no leading (most significant) zero, and 0 is the single digit [0].
class DigitExpansion {
 public:
  DigitExpansion(std::uint64_t base, std::vector<std::uint64_t> digits);

  std::uint64_t base() const { return base_; }
  std::span<const std::uint64_t> digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  std::uint64_t operator[](std::size_t j) const { return digits_[j]; }

  /// Sum of digits[j] * base^j. Throws OverflowError past 64 bits.
  std::uint64_t value() const;

  friend bool operator==(const DigitExpansion&, const DigitExpansion&) = default;

 private:
  std::uint64_t base_;
  std::vector<std::uint64_t> digits_;
};

DigitExpansion base_digits(std::uint64_t n, std::uint64_t base);

/// s_p(n), the base-p digit sum.
std::uint64_t digit_sum(std::uint64_t n, std::uint64_t base);

/// Largest j with p^j | m. Rejects m = 0 and non-prime p.
unsigned p_adic_valuation(std::uint64_t m, std::uint64_t p);

/// Exponent of the prime p in n!, as the digit-weighted sum
/// e_p(n) = sum_j n_j (p^j - 1)/(p - 1) over the base-p digits of n.
std::uint64_t legendre_exponent(std::uint64_t n, std::uint64_t p);

/// e_p(n) as sum_{j >= 1} floor(n / p^j).
std::uint64_t legendre_floor_sum(std::uint64_t n, std::uint64_t p);

/// e_p(n) as (n - s_p(n)) / (p - 1).
std::uint64_t legendre_from_digit_sum(std::uint64_t n, std::uint64_t p);

}  // namespace factexp
