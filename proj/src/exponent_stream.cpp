#include "factexp/exponent_stream.hpp"

#include <limits>
#include <string>

#include "factexp/arith.hpp"
#include "factexp/digits.hpp"
#include "factexp/error.hpp"

namespace factexp {

ExponentStream::ExponentStream(std::uint64_t prime, std::uint64_t start,
                               std::optional<std::uint64_t> modulus)
    : prime_(prime), cursor_(start), exponent_(0), modulus_(modulus), residue_(0) {
  require_prime(prime, "stream prime");
  if (modulus_ && *modulus_ < 2) {
    throw DomainError("stream modulus must be at least 2, got " +
                      std::to_string(*modulus_));
  }
  exponent_ = legendre_exponent(start, prime);
  residue_ = modulus_ ? exponent_ % *modulus_ : exponent_;
  auto expansion = base_digits(start, prime);
  digits_.assign(expansion.digits().begin(), expansion.digits().end());
}

unsigned ExponentStream::step() {
  if (cursor_ == std::numeric_limits<std::uint64_t>::max()) {
    throw OverflowError("exponent stream cursor would pass 2^64 - 1");
  }
  unsigned carries = 0;
  while (carries < digits_.size() && digits_[carries] == prime_ - 1) {
    digits_[carries] = 0;
    ++carries;
  }
  if (carries == digits_.size()) {
    digits_.push_back(1);
  } else {
    ++digits_[carries];
  }
  ++cursor_;
  if (carries != 0) {
    exponent_ += carries;
    if (modulus_) {
      residue_ += carries;
      if (residue_ >= *modulus_) residue_ %= *modulus_;
    } else {
      residue_ = exponent_;
    }
  }
  return carries;
}

StreamStep ExponentStream::advance() {
  step();
  return {cursor_, exponent_};
}

}  // namespace factexp
