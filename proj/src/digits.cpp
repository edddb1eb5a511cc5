#include "factexp/digits.hpp"

#include <string>

#include "factexp/arith.hpp"
#include "factexp/error.hpp"

namespace factexp {
namespace {

void require_base(std::uint64_t base) {
  if (base < 2) {
    throw DomainError("base must be at least 2, got " + std::to_string(base));
  }
}

}  // namespace

DigitExpansion::DigitExpansion(std::uint64_t base, std::vector<std::uint64_t> digits)
    : base_(base), digits_(std::move(digits)) {
  require_base(base_);
  if (digits_.empty()) throw DomainError("digit expansion needs at least one digit");
  for (std::uint64_t d : digits_) {
    if (d >= base_) {
      throw DomainError("digit " + std::to_string(d) + " out of range for base " +
                        std::to_string(base_));
    }
  }
  if (digits_.size() > 1 && digits_.back() == 0) {
    throw DomainError("digit expansion has a leading zero");
  }
}

std::uint64_t DigitExpansion::value() const {
  unsigned __int128 acc = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
    acc = acc * base_ + *it;
    if (acc > UINT64_MAX) throw OverflowError("digit expansion exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

DigitExpansion base_digits(std::uint64_t n, std::uint64_t base) {
  require_base(base);
  std::vector<std::uint64_t> digits;
  do {
    digits.push_back(n % base);
    n /= base;
  } while (n != 0);
  return DigitExpansion(base, std::move(digits));
}

std::uint64_t digit_sum(std::uint64_t n, std::uint64_t base) {
  require_base(base);
  std::uint64_t sum = 0;
  for (; n != 0; n /= base) sum += n % base;
  return sum;
}

unsigned p_adic_valuation(std::uint64_t m, std::uint64_t p) {
  if (m == 0) throw DomainError("p-adic valuation of 0 is undefined");
  require_prime(p, "p");
  unsigned v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

std::uint64_t legendre_exponent(std::uint64_t n, std::uint64_t p) {
  require_prime(p, "p");
  // Repunit weights (p^j - 1)/(p - 1) grow as w_{j+1} = p w_j + 1, and
  // n_j * w_j <= p^j - 1 <= n. The weight formed after the top digit may wrap
  // but is never read.
  std::uint64_t e = 0;
  std::uint64_t weight = 0;
  for (; n != 0; n /= p) {
    e += (n % p) * weight;
    weight = weight * p + 1;
  }
  return e;
}

std::uint64_t legendre_floor_sum(std::uint64_t n, std::uint64_t p) {
  require_prime(p, "p");
  std::uint64_t e = 0;
  for (std::uint64_t q = n / p; q != 0; q /= p) e += q;
  return e;
}

std::uint64_t legendre_from_digit_sum(std::uint64_t n, std::uint64_t p) {
  require_prime(p, "p");
  return (n - digit_sum(n, p)) / (p - 1);
}

}  // namespace factexp
